#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "padix/padic.hpp"

using namespace padix;

namespace {

Rational random_rational(std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-1000, 1000);
    std::uniform_int_distribution<long> den(1, 1000);
    return make_rational(num(rng), den(rng));
}

// brute-force valuation of j! by multiplying it out
Valuation factorial_valuation_brute(unsigned long j, long p) {
    mpz_class f = 1;
    for (unsigned long i = 2; i <= j; ++i) f *= i;
    return valuation(Rational(f), p);
}

}  // namespace

TEST_CASE("context validation") {
    Context c5(5, 10, 8);
    CHECK(c5.d == 1);
    Context c2(2, 10, 8);
    CHECK(c2.d == 2);
    CHECK_THROWS_AS(Context(4, 10, 8), std::invalid_argument);
    CHECK_THROWS_AS(Context(5, 1, 8), std::invalid_argument);
    CHECK_THROWS_AS(Context(5, 10, 0), std::invalid_argument);
}

TEST_CASE("valuation examples") {
    CHECK(valuation(Rational(12), 3) == Valuation(1));
    CHECK(valuation(Rational(0), 5) == Valuation::infinity());
    CHECK(valuation(make_rational(1, 6), 2) == Valuation(-1));
}

TEST_CASE("valuation properties") {
    std::mt19937 rng(42);
    for (long p : {2L, 3L, 5L}) {
        for (int i = 0; i < 200; ++i) {
            Rational x = random_rational(rng);
            Rational y = random_rational(rng);
            if (x != 0 && y != 0) {
                Rational xy = x * y;
                CHECK(valuation(xy, p) == valuation(x, p) + valuation(y, p));
            }
            Rational s = x + y;
            Valuation vs = valuation(s, p);
            Valuation m = min(valuation(x, p), valuation(y, p));
            CHECK(vs >= m);
            if (valuation(x, p) == valuation(y, p)) continue;
            CHECK(vs == m);
        }
    }
}

TEST_CASE("norm valuation and balls") {
    Context ctx(3, 4, 1);
    CHECK(norm_valuation({Rational(3), Rational(9)}, ctx) == Valuation(1));
    CHECK(norm_valuation({Rational(0), Rational(0)}, ctx) == Valuation::infinity());
    CHECK(norm_valuation({make_rational(1, 3), Rational(5)}, ctx) == Valuation(-1));

    Context c5(5, 4, 1);
    CHECK(in_ball({Rational(25)}, {Rational(0)}, -1, c5));
    CHECK(!in_ball({Rational(1)}, {Rational(0)}, -1, c5));
    CHECK(in_ball({Rational(7)}, {Rational(7)}, -100, c5));
    CHECK_THROWS_AS(in_ball({Rational(1)}, {Rational(0), Rational(0)}, 0, c5),
                    std::invalid_argument);
}

TEST_CASE("factorial valuation") {
    Context c2(2, 4, 1);
    CHECK(factorial_valuation(4, c2) == Valuation(3));
    CHECK(factorial_valuation(0, c2) == Valuation(0));
    for (long p : {2L, 3L, 5L}) {
        Context ctx(p, 4, 1);
        CHECK(factorial_valuation(static_cast<unsigned long>(p), ctx) == Valuation(1));
        for (unsigned long j = 0; j <= 200; ++j)
            CHECK(factorial_valuation(j, ctx) == factorial_valuation_brute(j, p));
    }
}

TEST_CASE("rational text round-trip") {
    for (const char* s : {"0", "1", "-3", "7/4", "-22/7", "123456789123456789/2"}) {
        Rational q = parse_rational(s);
        CHECK(rational_str(q) == s);
    }
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
}
