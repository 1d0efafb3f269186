#ifndef PADIX_SOLVER_HPP
#define PADIX_SOLVER_HPP

#include <optional>

#include "padix/series.hpp"

namespace padix {

/// Initial value problem dy_i/dx = f_i(x, y_1..y_l). The right-hand sides are
/// series in vars (x, y_1..y_l); an empty initial vector means the symbolic
/// mode, where the initial values become formal variables y0_1..y0_l.
struct IVPProblem {
    size_t ell = 0;
    std::vector<MultiSeries> f;
    std::optional<std::vector<Rational>> initial;  // nullopt = symbolic
    Rational x0 = Rational(0);
};

enum class IVPMode { Plain, Certified };

/// C_s = sup |c_i(s0,..,sl)|_p over terms of total y-degree s, stored as
/// valuation exponents (C_s = p^-values[s], +infinity marks an empty degree).
struct CsTable {
    std::vector<Valuation> values;  // s = 0..D
};

struct IVPSolution {
    // Solution components: series in x (concrete mode) or in
    // (x, y0_1..y0_l) (symbolic mode), centered at x0 in x.
    std::vector<MultiSeries> y;
    bool symbolic = false;
    CsTable cs;
    std::optional<long> radius_exponent;  // set in certified mode
    Certificate certificate;
};

/// Coefficients are produced degree by degree from the integrated recurrence:
/// the partial solution is substituted into f and the next coefficient read
/// off, which is the multinomial recurrence in disguise. In concrete mode the
/// x^k coefficients through the requested order are exact provided f carries
/// enough order headroom for the nonzero initial value (order + max
/// y-degree of interest); symbolic mode is exact at total-degree truncation.
IVPSolution ivp_solve(const IVPProblem& prob, int order, const Context& ctx,
                      IVPMode mode = IVPMode::Plain);

CsTable ivp_cs_table(const IVPProblem& prob, const Context& ctx);

/// Largest radius exponent e (r = p^e) with r^(s-1) C_s <= 1 for all
/// 2 <= s <= D, from the truncated table.
long admissible_radius(const IVPProblem& prob, const Context& ctx);

/// Verify |a_ij|_p <= r / |j!|_p for every computed coefficient
/// (concrete-mode solutions).
Certificate check_bound(const IVPSolution& sol, long radius_exponent, const Context& ctx);

/// Series of num/den by the reciprocal recurrence; coefficients ascending,
/// den[0] != 0.
MultiSeries rational_expand(const std::vector<Rational>& num, const std::vector<Rational>& den,
                            int order, const std::string& var = "x");

/// Newton polygon slopes of sum b_i x^i: each (valuation, multiplicity) pair
/// gives that many roots of the stated valuation (valuations are rational).
struct PolygonSlope {
    Rational root_valuation;
    int multiplicity = 0;
};

std::vector<PolygonSlope> newton_polygon(const std::vector<Rational>& poly, const Context& ctx);

/// Exponent e (rational) with min |root| = p^e; requires a nonzero constant
/// term so that no root sits at 0.
Rational min_root_abs_exponent(const std::vector<Rational>& poly, const Context& ctx);

/// Verify |a_k|_p <= |a_0|_p / R^k through the truncation order, where
/// R = p^R_exponent.
Certificate check_decay(const MultiSeries& series, const Rational& R_exponent, const Context& ctx);

}  // namespace padix

#endif
