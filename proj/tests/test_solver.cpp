#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "padix/io.hpp"
#include "padix/solver.hpp"

using namespace padix;

namespace {

// dy/dx = y^2/(1-x), as a series in (x, y); extra order gives the concrete
// mode enough headroom for nonzero initial values
IVPProblem logistic_problem(int f_order) {
    IVPProblem prob;
    prob.ell = 1;
    MultiSeries f({"x", "y"}, f_order);
    for (int a = 0; a + 2 <= f_order; ++a) f.set_coeff({a, 2}, Rational(1));
    prob.f = {f};
    return prob;
}

MultiSeries logistic_oracle(const Rational& y0, int order) {
    // y = 1/(1/y0 + log(1-x))
    MultiSeries w = MultiSeries::constant({"x"}, order, Rational(1) / y0);
    for (int k = 1; k <= order; ++k) w.add_term({k}, Rational(-1) / Rational(k));
    return w.inverse();
}

}  // namespace

TEST_CASE("symbolic golden coefficients") {
    Context ctx(5, 10, 1);
    IVPProblem prob = logistic_problem(12);
    IVPSolution sol = ivp_solve(prob, 10, ctx);
    REQUIRE(sol.symbolic);
    const MultiSeries& y = sol.y[0];
    CHECK(y.vars() == std::vector<std::string>{"x", "y01"});
    // a0 = y0
    CHECK(y.coeff({0, 1}) == 1);
    CHECK(y.coeff({0, 0}) == 0);
    // a1 = y0^2
    CHECK(y.coeff({1, 2}) == 1);
    // a2 = y0^2/2 + y0^3
    CHECK(y.coeff({2, 2}) == make_rational(1, 2));
    CHECK(y.coeff({2, 3}) == 1);
    // a3 = y0^2/3 + y0^3 + y0^4
    CHECK(y.coeff({3, 2}) == make_rational(1, 3));
    CHECK(y.coeff({3, 3}) == 1);
    CHECK(y.coeff({3, 4}) == 1);

    // determinism: a second run is identical
    CHECK(ivp_solve(prob, 10, ctx).y[0] == y);
}

TEST_CASE("zero right-hand side") {
    Context ctx(5, 4, 1);
    IVPProblem prob;
    prob.ell = 2;
    prob.f = {MultiSeries({"x", "y1", "y2"}, 6), MultiSeries({"x", "y1", "y2"}, 6)};
    prob.initial = std::vector<Rational>{Rational(3), make_rational(-1, 2)};
    IVPSolution sol = ivp_solve(prob, 6, ctx, IVPMode::Certified);
    CHECK(sol.y[0] == MultiSeries::constant({"x"}, 6, Rational(3)));
    CHECK(sol.y[1] == MultiSeries::constant({"x"}, 6, make_rational(-1, 2)));
    CHECK(sol.radius_exponent == 0);
}

TEST_CASE("concrete closed-form oracle") {
    Context ctx(5, 12, 1);
    IVPProblem prob = logistic_problem(14);
    prob.initial = std::vector<Rational>{Rational(5)};
    IVPSolution sol = ivp_solve(prob, 12, ctx);
    MultiSeries oracle = logistic_oracle(Rational(5), 12);
    CHECK(sol.y[0] == oracle);

    // ODE residual: y' = f(x, y(x)) through order - 1
    MultiSeries dy = sol.y[0].partial_derivative(0);
    MultiSeries rhs =
        prob.f[0].compose({MultiSeries::coordinate({"x"}, 12, 0), sol.y[0]}).truncated(11);
    CHECK(dy == rhs);
}

TEST_CASE("symbolic and concrete runs agree") {
    Context ctx(3, 12, 1);
    IVPProblem prob;
    prob.ell = 1;
    MultiSeries f({"x", "y"}, 12);
    f.set_coeff({0, 2}, Rational(1));  // y' = y^2
    prob.f = {f};
    IVPSolution sym = ivp_solve(prob, 12, ctx);
    for (const Rational& y0 : {Rational(3), make_rational(1, 2), Rational(-2)}) {
        prob.initial = std::vector<Rational>{y0};
        IVPSolution con = ivp_solve(prob, 12, ctx);
        for (int k = 0; k <= 5; ++k) {
            // y' = y^2 solves to a_k = y0^(k+1); degree 2k+1 <= 12 keeps the
            // symbolic truncation faithful for k <= 5
            Rational sym_at = sym.y[0].coeff_of_power(0, k).eval({Rational(0), y0});
            CHECK(sym_at == con.y[0].coeff({k}));
        }
    }
}

TEST_CASE("certified mode radius and hypothesis") {
    Context ctx(5, 8, 1);
    IVPProblem prob;
    prob.ell = 1;
    MultiSeries f({"x", "y"}, 8);
    f.set_coeff({0, 2}, Rational(1));
    prob.f = {f};
    prob.initial = std::vector<Rational>{Rational(0)};
    CHECK(admissible_radius(prob, ctx) == 0);

    MultiSeries fp({"x", "y"}, 8);
    fp.set_coeff({0, 2}, make_rational(1, 5));
    prob.f = {fp};
    CHECK(admissible_radius(prob, ctx) == -1);

    CsTable cs = ivp_cs_table(prob, ctx);
    CHECK(cs.values[2] == Valuation(-1));
    CHECK(cs.values[0] == Valuation::infinity());
    CHECK(cs.values[3] == Valuation::infinity());

    // hypothesis violation: linear term present
    MultiSeries fl({"x", "y"}, 8);
    fl.set_coeff({0, 1}, Rational(1));
    prob.f = {fl};
    CHECK_THROWS_AS(ivp_solve(prob, 8, ctx, IVPMode::Certified), std::domain_error);
}

TEST_CASE("coefficient bound certificate") {
    Context ctx(5, 12, 1);
    IVPProblem prob = logistic_problem(14);
    prob.initial = std::vector<Rational>{Rational(5)};
    IVPSolution sol = ivp_solve(prob, 12, ctx);
    Certificate cert = check_bound(sol, -1, ctx);
    CHECK(cert.verdict == "PASS");

    // negative control: scale a_2 by 1/p^3
    IVPSolution bad = sol;
    bad.y[0].set_coeff({2}, bad.y[0].coeff({2}) / Rational(125));
    Certificate fail = check_bound(bad, -1, ctx);
    CHECK(fail.verdict == "FAIL");
    REQUIRE(!fail.details.empty());
    CHECK(fail.details[0].find("j=2") != std::string::npos);
}

TEST_CASE("rational expansion") {
    Context ctx(5, 20, 1);
    MultiSeries alt = rational_expand({Rational(1)}, {Rational(1), Rational(0), Rational(1)}, 20);
    for (int k = 0; k <= 20; ++k)
        CHECK(alt.coeff({k}) == (k % 2 ? Rational(0) : Rational(k % 4 ? -1 : 1)));

    MultiSeries geo = rational_expand({Rational(1)}, {Rational(1), Rational(-1)}, 10);
    for (int k = 0; k <= 10; ++k) CHECK(geo.coeff({k}) == 1);

    MultiSeries m = rational_expand({Rational(1), Rational(1)}, {Rational(1), Rational(-1)}, 10);
    CHECK(m.coeff({0}) == 1);
    for (int k = 1; k <= 10; ++k) CHECK(m.coeff({k}) == 2);

    // multiply-back identity
    MultiSeries den({"x"}, 10);
    den.set_coeff({0}, Rational(1));
    den.set_coeff({1}, Rational(-1));
    MultiSeries num({"x"}, 10);
    num.set_coeff({0}, Rational(1));
    num.set_coeff({1}, Rational(1));
    CHECK(m * den == num);

    CHECK_THROWS_AS(rational_expand({Rational(1)}, {Rational(0), Rational(1)}, 5),
                    std::domain_error);
}

TEST_CASE("newton polygon") {
    Context ctx(5, 4, 1);
    auto s1 = newton_polygon({Rational(1), Rational(0), Rational(1)}, ctx);
    REQUIRE(s1.size() == 1);
    CHECK(s1[0].root_valuation == 0);
    CHECK(s1[0].multiplicity == 2);

    auto s2 = newton_polygon({Rational(1), make_rational(1, 5)}, ctx);
    REQUIRE(s2.size() == 1);
    CHECK(s2[0].root_valuation == 1);
    CHECK(s2[0].multiplicity == 1);

    auto s3 = newton_polygon({Rational(5), Rational(1)}, ctx);
    REQUIRE(s3.size() == 1);
    CHECK(s3[0].root_valuation == 1);
    CHECK(min_root_abs_exponent({Rational(5), Rational(1)}, ctx) == -1);

    // (x - p)(x - p^2) = p^3 - (p + p^2) x + x^2: valuations 2 then 1
    auto s4 = newton_polygon({Rational(125), Rational(-30), Rational(1)}, ctx);
    REQUIRE(s4.size() == 2);
    CHECK(s4[0].root_valuation == 2);
    CHECK(s4[1].root_valuation == 1);
    CHECK(min_root_abs_exponent({Rational(125), Rational(-30), Rational(1)}, ctx) == -2);

    CHECK_THROWS_AS(min_root_abs_exponent({Rational(0), Rational(1)}, ctx),
                    std::invalid_argument);
}

TEST_CASE("decay certificate") {
    Context ctx(5, 20, 1);
    MultiSeries alt = rational_expand({Rational(1)}, {Rational(1), Rational(0), Rational(1)}, 20);
    CHECK(check_decay(alt, Rational(0), ctx).verdict == "PASS");

    // 1/(1 - px): coefficients p^k, bound with R = p holds with equality
    MultiSeries g = rational_expand({Rational(1)}, {Rational(1), Rational(-5)}, 12);
    for (int k = 0; k <= 12; ++k) CHECK(valuation(g.coeff({k}), ctx) == Valuation(k));
    CHECK(check_decay(g, Rational(1), ctx).verdict == "PASS");

    // negative control: geometric series with an over-claimed radius
    MultiSeries geo = rational_expand({Rational(1)}, {Rational(1), Rational(-1)}, 12);
    Certificate fail = check_decay(geo, Rational(1), ctx);
    CHECK(fail.verdict == "FAIL");

    CHECK(check_decay(MultiSeries::constant({"x"}, 5, Rational(7)), Rational(3), ctx).verdict ==
          "PASS");
}

TEST_CASE("problem interchange round-trip") {
    IVPProblem prob = logistic_problem(8);
    prob.initial = std::vector<Rational>{make_rational(5, 3)};
    prob.x0 = make_rational(1, 2);
    std::ostringstream os;
    write_problem(os, prob, 7);
    std::istringstream is(os.str());
    long p = 0;
    IVPProblem back = read_problem(is, p);
    CHECK(p == 7);
    CHECK(back.f[0] == prob.f[0]);
    CHECK(back.x0 == prob.x0);
    CHECK(*back.initial == *prob.initial);

    prob.initial = std::nullopt;
    std::ostringstream os2;
    write_problem(os2, prob, 7);
    std::istringstream is2(os2.str());
    IVPProblem sym = read_problem(is2, p);
    CHECK(!sym.initial.has_value());
}
