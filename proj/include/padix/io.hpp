#ifndef PADIX_IO_HPP
#define PADIX_IO_HPP

#include <iostream>

#include "padix/darboux.hpp"
#include "padix/solver.hpp"

namespace padix {

/// Plain-text interchange documents. Serialization follows the internal map
/// orderings, so printing is deterministic and parse(print(x)) == x.

void write_series(std::ostream& os, const MultiSeries& s, long p);
MultiSeries read_series(std::istream& is, long& p);

void write_form(std::ostream& os, const KForm& a, long p);
KForm read_form(std::istream& is, long& p);

/// Problem document for the IVP solver: right-hand sides plus the
/// initial-condition record ("symbolic" or one rational per component).
void write_problem(std::ostream& os, const IVPProblem& prob, long p);
IVPProblem read_problem(std::istream& is, long& p);

/// Numerator/denominator polynomial input for rational expansion, with an
/// optional claimed decay-radius exponent.
struct RationalInput {
    long p = 0;
    int order = 0;
    std::string var = "x";
    std::vector<Rational> num, den;
    std::optional<Rational> claim;  // R = p^claim
};

void write_rational_input(std::ostream& os, const RationalInput& in);
RationalInput read_rational_input(std::istream& is);

void write_certificate(std::ostream& os, const Certificate& cert);

void write_report(std::ostream& os, const DarbouxReport& rep, const Context& ctx);

}  // namespace padix

#endif
