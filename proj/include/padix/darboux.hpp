#ifndef PADIX_DARBOUX_HPP
#define PADIX_DARBOUX_HPP

#include "padix/exterior.hpp"
#include "padix/solver.hpp"

namespace padix {

using Matrix = std::vector<std::vector<Rational>>;

/// Exact symplectic normalization: returns P with P^T M P = J0, where J0 is
/// the block-diagonal matrix of sum dx_i wedge dy_i in the form-matrix
/// convention. M must be skew and invertible. Pivot pairs are chosen with
/// maximal |M_ij|_p, ties broken lexicographically.
Matrix symplectic_normalize(const Matrix& M, const Context& ctx);

/// Primitive of a closed form centered at 0, via the radial homotopy
/// operator: a degree-m coefficient on a k-subset picks up the factor
/// 1/(m+k) under contraction with the Euler field. The result carries order
/// +1 relative to the input (the operator is graded degree by degree).
KForm poincare_primitive(const KForm& alpha);

/// Split coefficient terms of total degree <= 1 from the rest.
std::pair<KForm, KForm> split_linear(const KForm& beta);

/// Solve iota_X (omega0 + t alpha) = -beta2 for X over the truncated series
/// ring in (t, x): the matrix of omega0 + t alpha is inverted about its
/// constant term. Inputs are spatial forms; the result lives in vars
/// (t, x...) with the spatial frame. Both defining identities are asserted
/// exactly before returning.
VectorField moser_field(const KForm& omega0, const KForm& alpha, const KForm& beta2,
                        const Context& ctx);

/// Evidence for convergence of X_t in t on the ball of radius p^d: Newton
/// polygon of det(Omega0 + tA) at the center point. Center-point check only.
Certificate t_convergence_evidence(const KForm& omega0, const KForm& alpha, const Context& ctx);

/// Symbolic-initial-value flow of X (time variable first): components psi_i
/// in vars (t, y0_1..y0_l) with psi(0) = identity.
std::vector<MultiSeries> flow(const VectorField& X, const Context& ctx);

/// Check that psi_t^*(omega0 + t alpha) has no t-dependence at truncation and
/// that its t^0 part is omega0 (in the y0 coordinates).
Certificate verify_moser_constancy(const std::vector<MultiSeries>& psi, const KForm& omega0,
                                   const KForm& alpha, const Context& ctx);

struct DarbouxReport {
    KForm omega0, omega1, alpha, beta, beta1, beta2;
    VectorField X;
    std::vector<MultiSeries> psi;
    Matrix linear_change;  // P of the initial normalization
    // per-stage max |coefficient|_p of the defect series, "0" when exact
    std::vector<std::pair<std::string, std::string>> residuals;
    std::vector<Certificate> certificates;
    bool success = false;

    DarbouxReport() : omega0(0, {"x"}, 0), omega1(0, {"x"}, 0), alpha(0, {"x"}, 0),
                      beta(0, {"x"}, 0), beta1(0, {"x"}, 0), beta2(0, {"x"}, 0) {}
};

/// Full pipeline: normalize omega1 at the center, build alpha, primitive,
/// split, Moser field, t-convergence evidence, flow, constancy check.
/// working_order defaults to D + Dt + 2 so the final checks keep enough
/// degree headroom after the order-losing stages.
DarbouxReport darboux_transform(const KForm& omega1, const Context& ctx, int working_order = -1);

std::string residual_str(const Valuation& v, long p);

}  // namespace padix

#endif
