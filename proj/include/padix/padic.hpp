#ifndef PADIX_PADIC_HPP
#define PADIX_PADIC_HPP

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace padix {

/// Exact arbitrary-precision rational. GMP keeps the value in lowest terms
/// with a positive denominator, which is exactly the representation contract
/// we need: zero is 0/1 and p-adic valuations are computable exactly.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& text);
std::string rational_str(const Rational& q);

/// p-adic valuation: an integer or +infinity (the valuation of zero).
/// A p-adic absolute value r = p^(-v) is always carried as its exponent.
struct Valuation {
    long value = 0;
    bool is_infinite = false;

    Valuation() = default;
    explicit Valuation(long v) : value(v) {}
    static Valuation infinity() {
        Valuation v;
        v.is_infinite = true;
        return v;
    }

    bool finite() const { return !is_infinite; }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        if (a.is_infinite || b.is_infinite) return a.is_infinite == b.is_infinite;
        return a.value == b.value;
    }
    friend bool operator<(const Valuation& a, const Valuation& b) {
        if (a.is_infinite) return false;
        if (b.is_infinite) return true;
        return a.value < b.value;
    }
    friend bool operator<=(const Valuation& a, const Valuation& b) { return a < b || a == b; }
    friend bool operator>(const Valuation& a, const Valuation& b) { return b < a; }
    friend bool operator>=(const Valuation& a, const Valuation& b) { return b <= a; }

    // valuation of a product
    friend Valuation operator+(const Valuation& a, const Valuation& b) {
        if (a.is_infinite || b.is_infinite) return infinity();
        return Valuation(a.value + b.value);
    }

    friend Valuation min(const Valuation& a, const Valuation& b) { return a < b ? a : b; }

    std::string str() const { return is_infinite ? "+inf" : std::to_string(value); }
};

/// Global computation parameters: the prime p, the derived constant
/// d (2 when p = 2, 1 otherwise), and the truncation orders D (total degree
/// in the space variables) and Dt (degree in the time variable).
struct Context {
    long p;
    int d;
    int D;
    int Dt;

    Context(long p_, int D_, int Dt_);
};

bool is_prime(long n);

Valuation valuation(const Rational& x, const Context& ctx);
Valuation valuation(const Rational& x, long p);
Valuation norm_valuation(const std::vector<Rational>& v, const Context& ctx);
bool in_ball(const std::vector<Rational>& y, const std::vector<Rational>& center,
             long radius_exponent, const Context& ctx);

/// v_p(j!) by Legendre's formula, without forming the factorial.
Valuation factorial_valuation(unsigned long j, const Context& ctx);

}  // namespace padix

#endif
