#include "padix/padic.hpp"

namespace padix {

Rational parse_rational(const std::string& text) {
    Rational q;
    if (q.set_str(text, 10) != 0 || q.get_den() == 0)
        throw std::invalid_argument("parse_rational: bad rational '" + text + "'");
    q.canonicalize();
    return q;
}

std::string rational_str(const Rational& q) { return q.get_str(); }

bool is_prime(long n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (long f = 3; f * f <= n; f += 2)
        if (n % f == 0) return false;
    return true;
}

Context::Context(long p_, int D_, int Dt_) : p(p_), D(D_), Dt(Dt_) {
    if (!is_prime(p)) throw std::invalid_argument("Context: p must be prime");
    if (D < 2) throw std::invalid_argument("Context: D must be >= 2");
    if (Dt < 1) throw std::invalid_argument("Context: Dt must be >= 1");
    d = (p == 2) ? 2 : 1;
}

Valuation valuation(const Rational& x, long p) {
    if (x == 0) return Valuation::infinity();
    mpz_class pz(p), rem;
    long vn = static_cast<long>(mpz_remove(rem.get_mpz_t(), x.get_num_mpz_t(), pz.get_mpz_t()));
    long vd = static_cast<long>(mpz_remove(rem.get_mpz_t(), x.get_den_mpz_t(), pz.get_mpz_t()));
    return Valuation(vn - vd);
}

Valuation valuation(const Rational& x, const Context& ctx) { return valuation(x, ctx.p); }

Valuation norm_valuation(const std::vector<Rational>& v, const Context& ctx) {
    Valuation m = Valuation::infinity();
    for (const auto& x : v) m = min(m, valuation(x, ctx));
    return m;
}

bool in_ball(const std::vector<Rational>& y, const std::vector<Rational>& center,
             long radius_exponent, const Context& ctx) {
    if (y.size() != center.size())
        throw std::invalid_argument("in_ball: dimension mismatch");
    std::vector<Rational> diff(y.size());
    for (size_t i = 0; i < y.size(); ++i) diff[i] = y[i] - center[i];
    // radius r = p^radius_exponent, so membership is v(y - c) >= -radius_exponent
    return norm_valuation(diff, ctx) >= Valuation(-radius_exponent);
}

Valuation factorial_valuation(unsigned long j, const Context& ctx) {
    long total = 0;
    unsigned long q = j;
    while (q > 0) {
        q /= static_cast<unsigned long>(ctx.p);
        total += static_cast<long>(q);
    }
    return Valuation(total);
}

}  // namespace padix
