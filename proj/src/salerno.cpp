#include "padix/salerno.hpp"

namespace padix {

std::vector<std::string> salerno_vars(int n) {
    if (n < 1) throw std::invalid_argument("salerno_vars: need at least one pair");
    if (n == 1) return {"x", "y"};
    std::vector<std::string> v;
    for (int i = 1; i <= n; ++i) {
        v.push_back("x" + std::to_string(i));
        v.push_back("y" + std::to_string(i));
    }
    return v;
}

namespace {

// u_i = nu (x_i^2 + y_i^2); offset shifts the pair past leading parameters
MultiSeries pair_u(const std::vector<std::string>& vars, int order, const Rational& nu,
                   size_t pair, size_t offset) {
    MultiSeries u(vars, order);
    MultiSeries::Exponents ex(vars.size(), 0), ey(vars.size(), 0);
    ex[offset + 2 * pair] = 2;
    ey[offset + 2 * pair + 1] = 2;
    u.set_coeff(ex, nu);
    u.set_coeff(ey, nu);
    return u;
}

}  // namespace

KForm salerno_form(const SalernoParams& params, int order) {
    auto vars = salerno_vars(params.n);
    KForm w(2, vars, order);
    for (int i = 0; i < params.n; ++i) {
        MultiSeries den = MultiSeries::constant(vars, order, Rational(1)) +
                          pair_u(vars, order, params.nu, static_cast<size_t>(i), 0);
        w.add_term({static_cast<size_t>(2 * i), static_cast<size_t>(2 * i + 1)}, den.inverse());
    }
    return w;
}

MultiSeries f_series(int order, const std::string& var) {
    MultiSeries f({var}, order);
    for (int k = 1; k <= order; ++k)
        f.set_coeff({k}, Rational(k % 2 ? -1 : 1) / Rational(2 * (k + 1)));
    return f;
}

KForm gamma_form(const SalernoParams& params, int order) {
    auto vars = salerno_vars(params.n);
    KForm gamma(1, vars, order);
    MultiSeries f = f_series(order, "u");
    for (int i = 0; i < params.n; ++i) {
        MultiSeries u = pair_u(vars, order, params.nu, static_cast<size_t>(i), 0);
        MultiSeries g = f.compose({u});
        size_t xi = static_cast<size_t>(2 * i), yi = xi + 1;
        gamma.add_term({xi}, -(g * MultiSeries::coordinate(vars, order, yi)));
        gamma.add_term({yi}, g * MultiSeries::coordinate(vars, order, xi));
    }
    // d(gamma) reproduces the deformation through one order less
    KForm alpha = (salerno_form(params, order - 1) -
                   standard_symplectic_form(vars, order - 1));
    KForm d = exterior_d(gamma.truncated(order + 1)).truncated(order - 1);
    if (!(d == alpha)) throw std::logic_error("gamma_form: d(gamma) != omega1 - omega0");
    return gamma;
}

VectorField closed_form_field(const SalernoParams& params, FieldVariant variant, int order) {
    auto sp = salerno_vars(params.n);
    std::vector<std::string> tvars{"t"};
    for (const auto& v : sp) tvars.push_back(v);
    std::vector<Rational> tcenter(tvars.size(), Rational(0));
    std::vector<size_t> frame(sp.size());
    for (size_t i = 0; i < frame.size(); ++i) frame[i] = i + 1;

    VectorField X = VectorField::zero(tvars, order, tcenter, frame);
    MultiSeries t = MultiSeries::coordinate(tvars, order, 0, tcenter);
    MultiSeries one = MultiSeries::constant(tvars, order, Rational(1), tcenter);
    MultiSeries f = f_series(order, "u");
    for (int i = 0; i < params.n; ++i) {
        MultiSeries u = pair_u(tvars, order, params.nu, static_cast<size_t>(i), 1);
        MultiSeries pref = (one + u) * (one + u - t * u).inverse();
        // c - log(1+u)/(2u) = (c - 1/2) - f(u)
        MultiSeries fac = -f.compose({u});
        if (variant == FieldVariant::Printed)
            fac += MultiSeries::constant(tvars, order, Rational(1, 2), tcenter);
        MultiSeries s = pref * fac;
        X.components[static_cast<size_t>(2 * i)] =
            s * MultiSeries::coordinate(tvars, order, static_cast<size_t>(2 * i + 1), tcenter);
        X.components[static_cast<size_t>(2 * i + 1)] =
            s * MultiSeries::coordinate(tvars, order, static_cast<size_t>(2 * i + 2), tcenter);
    }
    return X;
}

SalernoRunResult salerno_end_to_end(const SalernoParams& params, const Context& ctx) {
    SalernoRunResult res;
    int W = ctx.D + ctx.Dt + 2;
    res.report = darboux_transform(salerno_form(params, W), ctx, W);

    VectorField cf = closed_form_field(params, FieldVariant::Derived, res.report.X.order);
    Valuation worst = Valuation::infinity();
    for (size_t i = 0; i < cf.components.size(); ++i)
        worst = min(worst,
                    (res.report.X.components[i] - cf.components[i]).min_coeff_valuation(ctx.p));
    res.field_matches_closed_form = !worst.finite();
    res.field_comparison = res.field_matches_closed_form
                               ? "pipeline field matches the closed form exactly at truncation"
                               : "max |difference|_p = " + residual_str(worst, ctx.p);
    return res;
}

}  // namespace padix
