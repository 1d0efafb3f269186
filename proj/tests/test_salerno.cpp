#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "padix/salerno.hpp"

using namespace padix;

namespace {

// extend a spatial form to vars (t, spatial...) with the spatial frame
KForm with_time(const KForm& a, int order) {
    std::vector<std::string> tvars{"t"};
    for (const auto& v : a.vars()) tvars.push_back(v);
    std::vector<Rational> tcenter(tvars.size(), Rational(0));
    std::vector<size_t> frame(a.vars().size());
    for (size_t i = 0; i < frame.size(); ++i) frame[i] = i + 1;
    KForm r(a.degree(), tvars, order, tcenter, frame);
    for (const auto& [s, c] : a.terms()) {
        KForm::Subset s2 = s;
        for (auto& v : s2) v += 1;
        r.add_term(s2, c.truncated(order).with_vars(tvars, tcenter));
    }
    return r;
}

void check_field_identities(const SalernoParams& params, long p, int order) {
    Context ctx(p, order, order);
    auto vars = salerno_vars(params.n);
    KForm omega0 = standard_symplectic_form(vars, order);
    KForm alpha = salerno_form(params, order) - omega0;
    KForm gamma = gamma_form(params, order);

    KForm omega0_t = with_time(omega0, order);
    KForm alpha_t = with_time(alpha, order);
    KForm gamma_t = with_time(gamma, order);
    std::vector<std::string> tvars = omega0_t.vars();
    MultiSeries t = MultiSeries::coordinate(tvars, order, 0);
    KForm omega_t = omega0_t + t * alpha_t;

    VectorField X = closed_form_field(params, FieldVariant::Derived, order);

    KForm contraction = contract(X, omega_t);
    CHECK((contraction + gamma_t.truncated(contraction.order())).is_zero());

    KForm lie = lie_derivative(X, omega_t);
    CHECK((alpha_t.truncated(lie.order()) + lie).is_zero());

    // the printed variant misses both identities
    VectorField Xp = closed_form_field(params, FieldVariant::Printed, order);
    KForm cp = contract(Xp, omega_t);
    CHECK(!(cp + gamma_t.truncated(cp.order())).is_zero());
}

}  // namespace

TEST_CASE("salerno form") {
    SalernoParams zero{Rational(0), 1};
    CHECK(salerno_form(zero, 6) == standard_symplectic_form({"x", "y"}, 6));

    SalernoParams p5{Rational(5), 1};
    KForm w = salerno_form(p5, 6);
    MultiSeries c = w.coeff({0, 1});
    CHECK(c.coeff({0, 0}) == 1);
    CHECK(c.coeff({2, 0}) == -5);
    CHECK(c.coeff({0, 2}) == -5);
    CHECK(c.coeff({2, 2}) == 50);
    CHECK(c.coeff({6, 0}) == -125);
    CHECK(exterior_d(w).is_zero());
}

TEST_CASE("f series") {
    MultiSeries f = f_series(8);
    CHECK(f.coeff({0}) == 0);
    CHECK(f.coeff({1}) == make_rational(-1, 4));
    CHECK(f.coeff({2}) == make_rational(1, 6));
    CHECK(f.coeff({3}) == make_rational(-1, 8));

    // 2f + 2uf' + u/(1+u) = 0 through order - 1
    int n = 8;
    MultiSeries u = MultiSeries::coordinate({"u"}, n - 1, 0);
    MultiSeries lhs = Rational(2) * f.truncated(n - 1) +
                      Rational(2) * (u * f.partial_derivative(0)) +
                      u * (MultiSeries::constant({"u"}, n - 1, Rational(1)) + u).inverse();
    CHECK(lhs.is_zero());

    // u f(u) = (log(1+u) - u)/2
    MultiSeries uf = MultiSeries::coordinate({"u"}, n, 0) * f;
    MultiSeries expect =
        make_rational(1, 2) * (log1p_series(n, "u") - MultiSeries::coordinate({"u"}, n, 0));
    CHECK(uf == expect);
}

TEST_CASE("gamma form") {
    SalernoParams zero{Rational(0), 1};
    CHECK(gamma_form(zero, 8).is_zero());

    SalernoParams p5{Rational(5), 1};
    KForm g = gamma_form(p5, 8);  // d(gamma) = alpha asserted inside
    // leading term -(nu/4) s (-y dx + x dy)
    MultiSeries gx = g.coeff({0});
    CHECK(gx.coeff({2, 1}) == make_rational(5, 4));
    CHECK(gx.coeff({0, 3}) == make_rational(5, 4));
    CHECK(gx.min_degree() == 3);

    // direct exactness check at the parameter sets of interest
    for (auto [p, nu] : {std::pair<long, long>{5, 5}, {7, 3}}) {
        SalernoParams params{Rational(nu), 1};
        KForm gamma = gamma_form(params, 11);
        KForm alpha = salerno_form(params, 10) - standard_symplectic_form({"x", "y"}, 10);
        CHECK(exterior_d(gamma.truncated(12)).truncated(10) == alpha);
    }
}

TEST_CASE("closed-form field") {
    SalernoParams zero{Rational(0), 1};
    VectorField X0 = closed_form_field(zero, FieldVariant::Derived, 8);
    for (const auto& c : X0.components) CHECK(c.is_zero());

    check_field_identities({Rational(5), 1}, 5, 11);
    check_field_identities({Rational(3), 1}, 7, 11);

    // derived field vanishes to degree 3 in space; printed has a linear part
    VectorField Xd = closed_form_field({Rational(5), 1}, FieldVariant::Derived, 8);
    CHECK(Xd.components[0].filter_degree({1, 2}, 0, 2).is_zero());
    VectorField Xp = closed_form_field({Rational(5), 1}, FieldVariant::Printed, 8);
    CHECK(!Xp.components[0].filter_degree({1, 2}, 0, 2).is_zero());
}

TEST_CASE("end to end") {
    for (auto [p, nu] : {std::pair<long, long>{5, 5}, {7, 3}}) {
        Context ctx(p, 10, 8);
        SalernoRunResult res = salerno_end_to_end({Rational(nu), 1}, ctx);
        CHECK(res.report.success);
        for (const auto& [name, r] : res.report.residuals) CHECK(r == "0");
        for (const auto& cert : res.report.certificates) CHECK(cert.passed());
        CHECK(res.field_matches_closed_form);
    }

    // nu = 0 degenerates to the identity transform
    Context ctx(5, 4, 2);
    SalernoRunResult triv = salerno_end_to_end({Rational(0), 1}, ctx);
    CHECK(triv.report.success);
    CHECK(triv.report.X.components[0].is_zero());

    // two pairs, small orders
    Context ctx2(3, 4, 2);
    SalernoRunResult two = salerno_end_to_end({Rational(2), 2}, ctx2);
    CHECK(two.report.success);
    CHECK(two.field_matches_closed_form);
}
