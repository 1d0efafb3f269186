#include "padix/darboux.hpp"

#include <algorithm>

namespace padix {

namespace {

Rational bilinear(const Matrix& M, const std::vector<Rational>& u, const std::vector<Rational>& v) {
    Rational acc(0);
    for (size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0) continue;
        for (size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0) acc += u[i] * M[i][j] * v[j];
    }
    return acc;
}

}  // namespace

std::string residual_str(const Valuation& v, long p) {
    if (!v.finite()) return "0";
    return "p^" + std::to_string(-v.value) + " (p=" + std::to_string(p) + ")";
}

Matrix symplectic_normalize(const Matrix& M, const Context& ctx) {
    size_t n = M.size();
    if (n == 0 || n % 2 != 0) throw std::invalid_argument("symplectic_normalize: need even size");
    for (size_t i = 0; i < n; ++i) {
        if (M[i].size() != n) throw std::invalid_argument("symplectic_normalize: not square");
        for (size_t j = 0; j < n; ++j)
            if (M[i][j] != -M[j][i]) throw std::invalid_argument("symplectic_normalize: not skew");
    }
    std::vector<std::vector<Rational>> work;
    for (size_t i = 0; i < n; ++i) {
        std::vector<Rational> e(n, Rational(0));
        e[i] = 1;
        work.push_back(std::move(e));
    }
    std::vector<std::vector<Rational>> cols;
    while (!work.empty()) {
        // pivot pair with maximal |B(w_a, w_b)|_p
        size_t best_a = 0, best_b = 0;
        Valuation best = Valuation::infinity();
        for (size_t a = 0; a < work.size(); ++a)
            for (size_t b = a + 1; b < work.size(); ++b) {
                Valuation v = valuation(bilinear(M, work[a], work[b]), ctx);
                if (v < best) {
                    best = v;
                    best_a = a;
                    best_b = b;
                }
            }
        if (!best.finite())
            throw std::invalid_argument("symplectic_normalize: singular matrix");
        std::vector<Rational> u = work[best_a];
        Rational c = bilinear(M, u, work[best_b]);
        std::vector<Rational> v = work[best_b];
        for (auto& x : v) x /= c;
        std::vector<std::vector<Rational>> rest;
        for (size_t i = 0; i < work.size(); ++i) {
            if (i == best_a || i == best_b) continue;
            std::vector<Rational> w = work[i];
            Rational cu = bilinear(M, u, w);
            Rational cv = bilinear(M, v, w);
            // w' = w - B(u,w) v + B(v,w) u is orthogonal to u and v
            for (size_t j = 0; j < n; ++j) w[j] = w[j] - cu * v[j] + cv * u[j];
            rest.push_back(std::move(w));
        }
        cols.push_back(std::move(u));
        cols.push_back(std::move(v));
        work = std::move(rest);
    }
    Matrix P(n, std::vector<Rational>(n, Rational(0)));
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < n; ++i) P[i][j] = cols[j][i];
    return P;
}

KForm poincare_primitive(const KForm& alpha) {
    if (alpha.degree() < 1) throw std::invalid_argument("poincare_primitive: need degree >= 1");
    for (const auto& c : alpha.center())
        if (c != 0) throw std::invalid_argument("poincare_primitive: form must be centered at 0");
    // closedness of the stored polynomial, with headroom so nothing truncates
    KForm dcheck = exterior_d(alpha.truncated(alpha.order() + 1));
    if (!dcheck.is_zero())
        throw std::domain_error("poincare_primitive: form is not closed; d(alpha) = " + dcheck.str());

    int k = alpha.degree();
    KForm beta(k - 1, alpha.vars(), alpha.order() + 1, alpha.center(), alpha.frame());
    for (const auto& [s, c] : alpha.terms()) {
        for (const auto& [e, coef] : c.terms()) {
            int m = total_degree(e);
            Rational factor = coef / Rational(m + k);
            for (size_t idx = 0; idx < s.size(); ++idx) {
                KForm::Subset s2 = s;
                s2.erase(s2.begin() + static_cast<long>(idx));
                MultiSeries::Exponents e2 = e;
                e2[s[idx]] += 1;
                MultiSeries mono(alpha.vars(), beta.order(), alpha.center());
                mono.set_coeff(e2, idx % 2 == 0 ? factor : -factor);
                beta.add_term(s2, mono);
            }
        }
    }
    return beta;
}

std::pair<KForm, KForm> split_linear(const KForm& beta) {
    for (const auto& c : beta.center())
        if (c != 0) throw std::invalid_argument("split_linear: form must be centered at 0");
    std::vector<size_t> all(beta.vars().size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    KForm beta1 = beta.filter_coeff_degree(all, 0, 1);
    KForm beta2 = beta.filter_coeff_degree(all, 2, beta.order());
    return {beta1, beta2};
}

namespace {

struct SeriesMatrix {
    std::vector<std::vector<MultiSeries>> m;

    static SeriesMatrix identity(size_t n, const std::vector<std::string>& vars, int order,
                                 const std::vector<Rational>& center) {
        SeriesMatrix I;
        I.m.assign(n, std::vector<MultiSeries>(n, MultiSeries(vars, order, center)));
        for (size_t i = 0; i < n; ++i)
            I.m[i][i] = MultiSeries::constant(vars, order, Rational(1), center);
        return I;
    }

    bool is_zero() const {
        for (const auto& row : m)
            for (const auto& e : row)
                if (!e.is_zero()) return false;
        return true;
    }

    SeriesMatrix mul(const SeriesMatrix& o) const {
        size_t n = m.size();
        SeriesMatrix r;
        r.m.assign(n, std::vector<MultiSeries>(n, MultiSeries(m[0][0].vars(), m[0][0].order(),
                                                              m[0][0].center())));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                MultiSeries acc(m[0][0].vars(), m[0][0].order(), m[0][0].center());
                for (size_t k = 0; k < n; ++k) acc += m[i][k] * o.m[k][j];
                r.m[i][j] = std::move(acc);
            }
        return r;
    }
};

Matrix rational_matrix_inverse(const Matrix& A) {
    size_t n = A.size();
    Matrix aug = A;
    Matrix inv(n, std::vector<Rational>(n, Rational(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        while (pivot < n && aug[pivot][col] == 0) ++pivot;
        if (pivot == n) throw std::domain_error("matrix inverse: singular");
        std::swap(aug[pivot], aug[col]);
        std::swap(inv[pivot], inv[col]);
        Rational p = aug[col][col];
        for (size_t j = 0; j < n; ++j) {
            aug[col][j] /= p;
            inv[col][j] /= p;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || aug[i][col] == 0) continue;
            Rational f = aug[i][col];
            for (size_t j = 0; j < n; ++j) {
                aug[i][j] -= f * aug[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

// det of a matrix of univariate polynomials (coefficient vectors in t),
// by recursive minor expansion; sizes here are tiny.
std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

std::vector<Rational> poly_det(std::vector<std::vector<std::vector<Rational>>> A) {
    size_t n = A.size();
    if (n == 1) return A[0][0];
    std::vector<Rational> acc{Rational(0)};
    for (size_t i = 0; i < n; ++i) {
        std::vector<std::vector<std::vector<Rational>>> minor;
        for (size_t r = 0; r < n; ++r) {
            if (r == i) continue;
            std::vector<std::vector<Rational>> row;
            for (size_t c = 1; c < n; ++c) row.push_back(A[r][c]);
            minor.push_back(std::move(row));
        }
        std::vector<Rational> term = poly_mul(A[i][0], poly_det(std::move(minor)));
        if (i % 2 == 1)
            for (auto& x : term) x = -x;
        if (term.size() > acc.size()) acc.resize(term.size(), Rational(0));
        for (size_t k = 0; k < term.size(); ++k) acc[k] += term[k];
    }
    return acc;
}

// extend a spatial form to vars (t, spatial...) with the spatial frame
KForm with_time(const KForm& a, const std::vector<std::string>& tvars, int order) {
    std::vector<Rational> tcenter(tvars.size(), Rational(0));
    std::vector<size_t> frame(tvars.size() - 1);
    for (size_t i = 0; i < frame.size(); ++i) frame[i] = i + 1;
    KForm r(a.degree(), tvars, order, tcenter, frame);
    for (const auto& [s, c] : a.terms()) {
        KForm::Subset s2 = s;
        for (auto& v : s2) v += 1;
        r.add_term(s2, c.truncated(order).with_vars(tvars, tcenter));
    }
    return r;
}

}  // namespace

VectorField moser_field(const KForm& omega0, const KForm& alpha, const KForm& beta2,
                        const Context& ctx) {
    if (omega0.degree() != 2 || alpha.degree() != 2 || beta2.degree() != 1)
        throw std::invalid_argument("moser_field: expected 2-forms and a 1-form");
    std::vector<size_t> all(omega0.vars().size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    if (!beta2.filter_coeff_degree(all, 0, 1).is_zero())
        throw std::domain_error("moser_field: beta2 has terms of degree <= 1");

    int W = std::min(omega0.order(), alpha.order());
    std::vector<std::string> tvars{"t"};
    for (const auto& v : omega0.vars()) tvars.push_back(v);
    std::vector<Rational> tcenter(tvars.size(), Rational(0));

    KForm omega0_t = with_time(omega0, tvars, W);
    KForm alpha_t = with_time(alpha, tvars, W);
    KForm beta2_t = with_time(beta2, tvars, std::min(beta2.order(), W));
    MultiSeries tcoord = MultiSeries::coordinate(tvars, W, 0, tcenter);
    KForm omega_t = omega0_t + tcoord * alpha_t;

    FormMatrix FM = two_form_matrix(omega_t);
    size_t n = FM.frame.size();

    Matrix M0(n, std::vector<Rational>(n, Rational(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) M0[i][j] = FM.entries[i][j].constant_term();
    Matrix M0inv = rational_matrix_inverse(M0);  // throws on degenerate center

    // M = M0 (I + N), N = M0^{-1}(M - M0);  M^{-1} = (sum (-N)^k) M0^{-1}
    SeriesMatrix N;
    N.m.assign(n, std::vector<MultiSeries>(n, MultiSeries(tvars, W, tcenter)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            MultiSeries acc(tvars, W, tcenter);
            for (size_t k = 0; k < n; ++k) {
                MultiSeries rem = FM.entries[k][j];
                MultiSeries::Exponents e0(tvars.size(), 0);
                rem.set_coeff(e0, Rational(0));
                acc += M0inv[i][k] * rem;
            }
            N.m[i][j] = std::move(acc);
        }
    SeriesMatrix acc = SeriesMatrix::identity(n, tvars, W, tcenter);
    SeriesMatrix power = SeriesMatrix::identity(n, tvars, W, tcenter);
    for (int k = 1; k <= W; ++k) {
        SeriesMatrix next = N.mul(power);
        for (auto& row : next.m)
            for (auto& e : row) e = -e;
        if (next.is_zero()) break;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) acc.m[i][j] += next.m[i][j];
        power = std::move(next);
    }

    // X = M^{-1} b, with b the beta2 component vector
    std::vector<MultiSeries> b;
    for (size_t i = 0; i < n; ++i) b.push_back(beta2_t.coeff({FM.frame[i]}));
    VectorField X = VectorField::zero(tvars, W, tcenter, FM.frame);
    for (size_t i = 0; i < n; ++i) {
        MultiSeries xi(tvars, W, tcenter);
        for (size_t k = 0; k < n; ++k) {
            MultiSeries minv(tvars, W, tcenter);
            for (size_t j = 0; j < n; ++j) minv += M0inv[j][k] * acc.m[i][j];
            xi += minv * b[k];
        }
        X.components[i] = std::move(xi);
    }

    // verify the defining identity and the Moser identity exactly
    KForm contraction = contract(X, omega_t);
    if (!(contraction + beta2_t.truncated(contraction.order())).is_zero())
        throw std::logic_error("moser_field: iota_X(omega0 + t alpha) != -beta2");
    KForm lie = lie_derivative(X, omega_t);
    if (!(alpha_t.truncated(lie.order()) + lie).is_zero())
        throw std::logic_error("moser_field: Moser identity alpha + L_X omega_t != 0");
    return X;
}

Certificate t_convergence_evidence(const KForm& omega0, const KForm& alpha, const Context& ctx) {
    Certificate cert;
    cert.name = "t-convergence-evidence";
    FormMatrix M0 = two_form_matrix(omega0);
    FormMatrix MA = two_form_matrix(alpha);
    size_t n = M0.frame.size();
    std::vector<std::vector<std::vector<Rational>>> A(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            A[i].push_back({M0.entries[i][j].constant_term(), MA.entries[i][j].constant_term()});
    std::vector<Rational> det = poly_det(std::move(A));
    while (det.size() > 1 && det.back() == 0) det.pop_back();
    if (det.size() == 1) {
        if (det[0] == 0) {
            cert.verdict = "FAIL";
            cert.details.push_back("det(Omega0 + tA) vanishes identically at the center");
        } else {
            cert.verdict = "PASS";
            cert.details.push_back("determinant constant in t at the center; no roots");
        }
        return cert;
    }
    auto slopes = newton_polygon(det, ctx);
    cert.verdict = "PASS";
    for (const auto& s : slopes) {
        cert.details.push_back("root valuation " + s.root_valuation.get_str() + " multiplicity " +
                               std::to_string(s.multiplicity));
        // need |t| > p^d, i.e. valuation < -d
        if (!(s.root_valuation < Rational(-ctx.d))) cert.verdict = "FAIL";
    }
    cert.details.push_back("center-point check only; radius requirement p^" + std::to_string(ctx.d));
    return cert;
}

std::vector<MultiSeries> flow(const VectorField& X, const Context& ctx) {
    std::vector<size_t> spatial = X.frame;
    for (const auto& c : X.components)
        if (!c.filter_degree(spatial, 0, 1).is_zero())
            throw std::domain_error("flow: X has terms of spatial degree <= 1");
    IVPProblem prob;
    prob.ell = X.components.size();
    prob.f = X.components;
    prob.initial = std::nullopt;
    IVPSolution sol = ivp_solve(prob, X.order, ctx, IVPMode::Plain);
    return sol.y;
}

namespace {

std::pair<Valuation, Valuation> constancy_residuals(const std::vector<MultiSeries>& psi,
                                                    const KForm& omega0, const KForm& alpha,
                                                    long p) {
    size_t l = psi.size();
    const auto& svars = psi[0].vars();  // (t, y0...)
    std::vector<Rational> scenter(svars.size(), Rational(0));
    std::vector<size_t> y0frame(l);
    for (size_t i = 0; i < l; ++i) y0frame[i] = i + 1;

    int W = std::min(omega0.order(), alpha.order());
    std::vector<std::string> tvars{"t"};
    for (const auto& v : omega0.vars()) tvars.push_back(v);
    KForm omega0_t = with_time(omega0, tvars, W);
    KForm alpha_t = with_time(alpha, tvars, W);
    MultiSeries tcoord_form = MultiSeries::coordinate(tvars, W, 0);
    KForm omega_t = omega0_t + tcoord_form * alpha_t;

    std::vector<MultiSeries> map;
    map.push_back(MultiSeries::coordinate(svars, psi[0].order(), 0, scenter));
    for (const auto& c : psi) map.push_back(c);
    KForm pulled = pullback(map, omega_t, y0frame);

    std::vector<MultiSeries> idmap;
    idmap.push_back(MultiSeries::coordinate(svars, psi[0].order(), 0, scenter));
    for (size_t i = 0; i < l; ++i)
        idmap.push_back(MultiSeries::coordinate(svars, psi[0].order(), i + 1, scenter));
    KForm expected = pullback(idmap, omega0_t, y0frame);

    int ord = std::min(pulled.order(), expected.order());
    KForm tpart = pulled.truncated(ord).filter_coeff_degree({0}, 1, ord);
    KForm zero_part = pulled.truncated(ord).filter_coeff_degree({0}, 0, 0) - expected.truncated(ord);
    return {tpart.min_coeff_valuation(p), zero_part.min_coeff_valuation(p)};
}

}  // namespace

Certificate verify_moser_constancy(const std::vector<MultiSeries>& psi, const KForm& omega0,
                                   const KForm& alpha, const Context& ctx) {
    Certificate cert;
    cert.name = "moser-constancy";
    auto [vt, v0] = constancy_residuals(psi, omega0, alpha, ctx.p);
    bool ok = !vt.finite() && !v0.finite();
    cert.verdict = ok ? "PASS" : "FAIL";
    cert.details.push_back("t-dependent part of psi_t^* omega_t: " + residual_str(vt, ctx.p));
    cert.details.push_back("t^0 part minus omega0: " + residual_str(v0, ctx.p));
    return cert;
}

DarbouxReport darboux_transform(const KForm& omega1_in, const Context& ctx, int working_order) {
    DarbouxReport rep;
    int W = working_order > 0 ? working_order : ctx.D + ctx.Dt + 2;
    if (omega1_in.degree() != 2) throw std::invalid_argument("darboux_transform: need a 2-form");
    for (const auto& c : omega1_in.center())
        if (c != 0) throw std::invalid_argument("darboux_transform: form must be centered at 0");

    const auto& vars = omega1_in.vars();
    size_t n = vars.size();
    KForm omega1 = omega1_in.truncated(W);

    // Step 1: linear normalization so that omega1(0) is the standard matrix
    FormMatrix M1 = two_form_matrix(omega1);
    Matrix M1c(n, std::vector<Rational>(n, Rational(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) M1c[i][j] = M1.entries[i][j].constant_term();
    Matrix P = symplectic_normalize(M1c, ctx);
    rep.linear_change = P;
    bool identity = true;
    for (size_t i = 0; i < n && identity; ++i)
        for (size_t j = 0; j < n; ++j)
            if (P[i][j] != Rational(i == j ? 1 : 0)) {
                identity = false;
                break;
            }
    if (!identity) {
        std::vector<MultiSeries> lin;
        for (size_t i = 0; i < n; ++i) {
            MultiSeries li(vars, W + 1);
            for (size_t j = 0; j < n; ++j) {
                if (P[i][j] == 0) continue;
                MultiSeries::Exponents e(n, 0);
                e[j] = 1;
                li.set_coeff(e, P[i][j]);
            }
            lin.push_back(std::move(li));
        }
        omega1 = pullback(lin, omega1.truncated(W));
    }
    rep.omega1 = omega1;
    rep.omega0 = standard_symplectic_form(vars, W);
    rep.alpha = rep.omega1 - rep.omega0;

    rep.beta = poincare_primitive(rep.alpha);
    auto [b1, b2] = split_linear(rep.beta);
    rep.beta1 = b1;
    rep.beta2 = b2;
    Valuation r_dbeta2 = (exterior_d(rep.beta2) - rep.alpha.truncated(rep.beta2.order() - 1))
                             .min_coeff_valuation(ctx.p);
    rep.residuals.emplace_back("d(beta2) - alpha", residual_str(r_dbeta2, ctx.p));
    Valuation r_dbeta1 = exterior_d(rep.beta1).min_coeff_valuation(ctx.p);
    rep.residuals.emplace_back("d(beta1)", residual_str(r_dbeta1, ctx.p));

    rep.X = moser_field(rep.omega0, rep.alpha, rep.beta2, ctx);
    {
        std::vector<std::string> tvars{"t"};
        for (const auto& v : vars) tvars.push_back(v);
        KForm omega0_t = with_time(rep.omega0, tvars, W);
        KForm alpha_t = with_time(rep.alpha, tvars, W);
        KForm beta2_t = with_time(rep.beta2, tvars, W);
        MultiSeries tcoord = MultiSeries::coordinate(tvars, W, 0);
        KForm omega_t = omega0_t + tcoord * alpha_t;
        KForm contraction = contract(rep.X, omega_t);
        Valuation r_iota = (contraction + beta2_t.truncated(contraction.order()))
                               .min_coeff_valuation(ctx.p);
        rep.residuals.emplace_back("iota_X(omega0 + t alpha) + beta2", residual_str(r_iota, ctx.p));
        KForm lie = lie_derivative(rep.X, omega_t);
        Valuation r_moser = (alpha_t.truncated(lie.order()) + lie).min_coeff_valuation(ctx.p);
        rep.residuals.emplace_back("alpha + L_X(omega0 + t alpha)", residual_str(r_moser, ctx.p));
    }

    rep.certificates.push_back(t_convergence_evidence(rep.omega0, rep.alpha, ctx));

    rep.psi = flow(rep.X, ctx);
    Certificate c = verify_moser_constancy(rep.psi, rep.omega0, rep.alpha, ctx);
    rep.certificates.push_back(c);

    rep.success = c.passed();
    for (const auto& [name, r] : rep.residuals)
        if (r != "0") rep.success = false;
    for (const auto& cc : rep.certificates)
        if (!cc.passed()) rep.success = false;
    return rep;
}

}  // namespace padix
