#ifndef PADIX_SALERNO_HPP
#define PADIX_SALERNO_HPP

#include "padix/darboux.hpp"

namespace padix {

/// Parameters for the deformed lattice symplectic form
/// omega0 / (1 + nu (x^2 + y^2)) per (x, y) pair.
struct SalernoParams {
    Rational nu;
    int n = 1;  // number of (x, y) pairs
};

/// The scalar factor in the closed-form Moser field: Printed carries the
/// prefactor 1 - log(1+u)/(2u) as displayed in the source model, Derived
/// carries 1/2 - log(1+u)/(2u), the unique factor consistent with the
/// primitive built from f.
enum class FieldVariant { Printed, Derived };

std::vector<std::string> salerno_vars(int n);

/// The deformed form, coefficients expanded to the given order.
KForm salerno_form(const SalernoParams& params, int order);

/// f(u) = (log(1+u)/u - 1)/2 = -u/4 + u^2/6 - u^3/8 + ...
MultiSeries f_series(int order, const std::string& var = "u");

/// gamma = f(nu (x^2 + y^2)) (-y dx + x dy) per pair; asserts
/// d(gamma) = salerno_form - omega0 exactly at truncation.
KForm gamma_form(const SalernoParams& params, int order);

/// The closed-form time-dependent field in vars (t, x, y, ...), with the
/// rational prefactor (1+u)/(1+(1-t)u) expanded in t by the reciprocal
/// recurrence with series coefficients.
VectorField closed_form_field(const SalernoParams& params, FieldVariant variant, int order);

struct SalernoRunResult {
    DarbouxReport report;
    // coefficient-wise comparison of the pipeline field against the
    // closed-form Derived field (informational: gauge could differ)
    bool field_matches_closed_form = false;
    std::string field_comparison;
};

SalernoRunResult salerno_end_to_end(const SalernoParams& params, const Context& ctx);

}  // namespace padix

#endif
