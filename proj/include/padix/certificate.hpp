#ifndef PADIX_CERTIFICATE_HPP
#define PADIX_CERTIFICATE_HPP

#include <string>
#include <vector>

namespace padix {

/// Structured verification result. Verdicts are statements about the
/// truncated window only; details carry the evidence that was checked.
struct Certificate {
    std::string name;
    std::string verdict;  // PASS, FAIL, CONSISTENT, DIVERGENCE-WITNESS
    std::vector<std::string> details;

    bool passed() const { return verdict == "PASS" || verdict == "CONSISTENT"; }
};

}  // namespace padix

#endif
