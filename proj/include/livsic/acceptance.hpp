#ifndef LIVSIC_ACCEPTANCE_HPP
#define LIVSIC_ACCEPTANCE_HPP

#include <string>
#include <vector>

namespace livsic {

struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// The eight acceptance checks, in order.  Deterministic for a fixed
/// seed.  Each entry is independent; a throw inside a criterion is
/// converted into a failure with the message as detail.
std::vector<CriterionResult> run_acceptance(unsigned seed = 12345);

/// Render one line per criterion ("PASS name -- detail").
std::string format_acceptance(const std::vector<CriterionResult>& results);

} // namespace livsic

#endif
