#include "padix/solver.hpp"

#include <algorithm>

namespace padix {

namespace {

void check_problem(const IVPProblem& prob) {
    if (prob.f.empty()) throw std::invalid_argument("ivp: empty right-hand side");
    const auto& vars = prob.f[0].vars();
    if (vars.size() != prob.f.size() + 1)
        throw std::invalid_argument("ivp: f_i must live in vars (x, y_1..y_l)");
    for (const auto& fi : prob.f)
        if (fi.vars() != vars) throw std::invalid_argument("ivp: inconsistent f variables");
    if (prob.initial && prob.initial->size() != prob.f.size())
        throw std::invalid_argument("ivp: dimension mismatch in initial values");
}

// f_i recentered so that the local coordinates are (x - x0, y - v);
// v defaults to the y-part of the series center in symbolic mode.
std::vector<MultiSeries> recentered_rhs(const IVPProblem& prob) {
    std::vector<MultiSeries> out;
    out.reserve(prob.f.size());
    for (const auto& fi : prob.f) {
        std::vector<Rational> c(fi.vars().size(), Rational(0));
        c[0] = prob.x0;
        if (prob.initial)
            for (size_t j = 0; j < prob.initial->size(); ++j) c[j + 1] = (*prob.initial)[j];
        out.push_back(fi.recenter(c));
    }
    return out;
}

}  // namespace

CsTable ivp_cs_table(const IVPProblem& prob, const Context& ctx) {
    check_problem(prob);
    auto rhs = recentered_rhs(prob);
    int D = rhs[0].order();
    CsTable cs;
    cs.values.assign(static_cast<size_t>(D) + 1, Valuation::infinity());
    for (const auto& fi : rhs)
        for (const auto& [e, c] : fi.terms()) {
            int s = 0;
            for (size_t j = 1; j < e.size(); ++j) s += e[j];
            if (s <= D) cs.values[static_cast<size_t>(s)] = min(cs.values[static_cast<size_t>(s)], valuation(c, ctx));
        }
    return cs;
}

long admissible_radius(const IVPProblem& prob, const Context& ctx) {
    CsTable cs = ivp_cs_table(prob, ctx);
    // r = p^e with r^(s-1) C_s <= 1  <=>  e <= v_s / (s-1); cap at e = 0.
    long e = 0;
    for (size_t s = 2; s < cs.values.size(); ++s) {
        const Valuation& v = cs.values[s];
        if (!v.finite()) continue;
        long bound = v.value >= 0 ? v.value / static_cast<long>(s - 1)
                                  : -((-v.value + static_cast<long>(s) - 2) / static_cast<long>(s - 1));
        e = std::min(e, bound);
    }
    return e;
}

IVPSolution ivp_solve(const IVPProblem& prob, int order, const Context& ctx, IVPMode mode) {
    check_problem(prob);
    size_t ell = prob.f.size();
    auto rhs = recentered_rhs(prob);

    IVPSolution sol;
    sol.symbolic = !prob.initial.has_value();
    sol.certificate.name = "ivp-solve";
    sol.certificate.verdict = "PASS";

    if (mode == IVPMode::Certified) {
        // hypothesis: no terms of y-degree 0 or 1 around (x0, v)
        std::vector<size_t> yvars;
        for (size_t j = 1; j <= ell; ++j) yvars.push_back(j);
        for (const auto& fi : rhs)
            if (!fi.filter_degree(yvars, 0, 1).is_zero())
                throw std::domain_error("ivp_solve: certified mode requires vanishing y-degree 0 and 1 terms");
        sol.cs = ivp_cs_table(prob, ctx);
        sol.radius_exponent = admissible_radius(prob, ctx);
        sol.certificate.details.push_back("radius exponent " + std::to_string(*sol.radius_exponent));
        sol.certificate.details.push_back("C_s verified for s <= " + std::to_string(rhs[0].order()) +
                                          "; larger s unverified at truncation");
    }

    // solution variable list
    std::vector<std::string> svars{prob.f[0].vars()[0]};
    if (sol.symbolic)
        for (size_t j = 1; j <= ell; ++j) svars.push_back("y0" + std::to_string(j));
    std::vector<Rational> scenter(svars.size(), Rational(0));
    scenter[0] = prob.x0;

    std::vector<MultiSeries> psi;
    for (size_t i = 0; i < ell; ++i) {
        MultiSeries p0(svars, order, scenter);
        if (sol.symbolic) {
            MultiSeries::Exponents e(svars.size(), 0);
            e[i + 1] = 1;
            p0.set_coeff(e, Rational(1));
        } else {
            MultiSeries::Exponents e(svars.size(), 0);
            if ((*prob.initial)[i] != 0) p0.set_coeff(e, (*prob.initial)[i]);
        }
        psi.push_back(std::move(p0));
    }

    // substitute the partial solution, read off the x^k coefficient, integrate
    for (int k = 0; k < order; ++k) {
        std::vector<MultiSeries> args;
        args.push_back(MultiSeries::coordinate(svars, order, 0, scenter));
        // the local coordinate of x in rhs is x - x0, which is the
        // degree-1 part of the coordinate series
        {
            MultiSeries::Exponents e0(svars.size(), 0);
            args[0].set_coeff(e0, Rational(0));
        }
        for (size_t i = 0; i < ell; ++i) {
            MultiSeries a = psi[i];
            if (!sol.symbolic && prob.initial) {
                // rhs is recentered at v, so substitute psi_i - v_i
                MultiSeries::Exponents e0(svars.size(), 0);
                a.set_coeff(e0, a.coeff(e0) - (*prob.initial)[i]);
            }
            args.push_back(std::move(a));
        }
        for (size_t i = 0; i < ell; ++i) {
            MultiSeries F = rhs[i].compose(args);
            MultiSeries ck = F.coeff_of_power(0, k);
            if (ck.is_zero()) continue;
            for (const auto& [e, c] : ck.terms()) {
                MultiSeries::Exponents e2 = e;
                e2[0] = k + 1;
                psi[i].add_term(e2, c / Rational(k + 1));
            }
        }
    }
    sol.y = std::move(psi);
    return sol;
}

Certificate check_bound(const IVPSolution& sol, long radius_exponent, const Context& ctx) {
    Certificate cert;
    cert.name = "ivp-coefficient-bound";
    cert.verdict = "PASS";
    if (sol.symbolic) throw std::invalid_argument("check_bound: needs a concrete-initial solution");
    long e = radius_exponent;
    for (size_t i = 0; i < sol.y.size(); ++i) {
        const auto& yi = sol.y[i];
        for (int j = 0; j <= yi.order(); ++j) {
            Rational aij = yi.coeff({j});
            if (aij == 0) continue;
            // |a_ij| <= r / |j!|  <=>  v(a_ij) >= -e - v_p(j!)
            Valuation va = valuation(aij, ctx);
            Valuation vf = factorial_valuation(static_cast<unsigned long>(j), ctx);
            long needed = -e - vf.value;
            if (va.finite() && va.value < needed) {
                cert.verdict = "FAIL";
                cert.details.push_back("violation at i=" + std::to_string(i + 1) +
                                       " j=" + std::to_string(j) + ": v(a)=" + va.str() +
                                       " < " + std::to_string(needed));
                return cert;
            }
        }
    }
    cert.details.push_back("|a_ij| <= r/|j!| verified for all computed coefficients");
    return cert;
}

MultiSeries rational_expand(const std::vector<Rational>& num, const std::vector<Rational>& den,
                            int order, const std::string& var) {
    if (den.empty() || den[0] == 0)
        throw std::domain_error("rational_expand: zero constant term in denominator");
    std::vector<Rational> rec(static_cast<size_t>(order) + 1, Rational(0));
    rec[0] = Rational(1) / den[0];
    for (int k = 1; k <= order; ++k) {
        Rational acc(0);
        for (size_t i = 1; i < den.size() && static_cast<int>(i) <= k; ++i)
            acc += rec[static_cast<size_t>(k) - i] * den[i];
        rec[static_cast<size_t>(k)] = -acc / den[0];
    }
    MultiSeries out({var}, order);
    for (int k = 0; k <= order; ++k) {
        Rational c(0);
        for (size_t i = 0; i < num.size() && static_cast<int>(i) <= k; ++i)
            c += num[i] * rec[static_cast<size_t>(k) - i];
        if (c != 0) out.set_coeff({k}, c);
    }
    return out;
}

std::vector<PolygonSlope> newton_polygon(const std::vector<Rational>& poly, const Context& ctx) {
    struct Pt {
        long x;
        long y;
    };
    std::vector<Pt> pts;
    for (size_t i = 0; i < poly.size(); ++i) {
        if (poly[i] == 0) continue;
        pts.push_back({static_cast<long>(i), valuation(poly[i], ctx).value});
    }
    if (pts.empty()) throw std::invalid_argument("newton_polygon: zero polynomial");
    // lower convex hull, left to right
    std::vector<Pt> hull;
    for (const auto& q : pts) {
        while (hull.size() >= 2) {
            const Pt& a = hull[hull.size() - 2];
            const Pt& b = hull[hull.size() - 1];
            // pop b unless it lies strictly below segment a-q
            if ((b.x - a.x) * (q.y - a.y) - (b.y - a.y) * (q.x - a.x) <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(q);
    }
    std::vector<PolygonSlope> slopes;
    for (size_t i = 0; i + 1 < hull.size(); ++i) {
        Rational slope(hull[i + 1].y - hull[i].y, hull[i + 1].x - hull[i].x);
        slope.canonicalize();
        slopes.push_back({-slope, static_cast<int>(hull[i + 1].x - hull[i].x)});
    }
    return slopes;
}

Rational min_root_abs_exponent(const std::vector<Rational>& poly, const Context& ctx) {
    if (poly.empty() || poly[0] == 0)
        throw std::invalid_argument("min_root_abs_exponent: zero constant term");
    auto slopes = newton_polygon(poly, ctx);
    if (slopes.empty()) throw std::invalid_argument("min_root_abs_exponent: constant polynomial has no roots");
    // |root| = p^(-valuation); the smallest norm comes from the largest valuation
    Rational vmax = slopes[0].root_valuation;
    for (const auto& s : slopes) vmax = std::max(vmax, s.root_valuation);
    return -vmax;
}

Certificate check_decay(const MultiSeries& series, const Rational& R_exponent, const Context& ctx) {
    Certificate cert;
    cert.name = "rational-decay-bound";
    cert.verdict = "PASS";
    CoeffSup cs = coeff_sup(series, ctx);
    if (!cs.values[0].finite()) {
        for (size_t k = 1; k < cs.values.size(); ++k)
            if (cs.values[k].finite()) {
                cert.verdict = "FAIL";
                cert.details.push_back("a_0 = 0 but degree " + std::to_string(k) + " nonzero");
                return cert;
            }
        cert.details.push_back("zero series; bound trivial");
        return cert;
    }
    // |a_k| <= |a_0| / R^k  <=>  v_k >= v_0 + k e with R = p^e
    Rational v0(cs.values[0].value);
    for (size_t k = 1; k < cs.values.size(); ++k) {
        if (!cs.values[k].finite()) continue;
        Rational needed = v0 + Rational(static_cast<long>(k)) * R_exponent;
        if (Rational(cs.values[k].value) < needed) {
            cert.verdict = "FAIL";
            cert.details.push_back("violation at k=" + std::to_string(k) + ": v=" +
                                   std::to_string(cs.values[k].value) + " < " + needed.get_str());
            return cert;
        }
    }
    cert.details.push_back("|a_k| <= |a_0|/R^k verified through order " +
                           std::to_string(series.order()));
    return cert;
}

}  // namespace padix
