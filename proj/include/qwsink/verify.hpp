#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qwsink {

enum class VerifyLevel {
    Quick, ///< thinned grids, a few seconds
    Full   ///< the complete release gate
};

/// Outcome of one verification criterion.  measured <= threshold means pass
/// unless a note says otherwise (compound criteria record their worst part).
struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string note;
};

/// Run the whole self-verification battery: exact formulas against the
/// brute-force lattice oracle, conservation laws, duality, pole structure,
/// phase-space invariants.
std::vector<CriterionResult> run_acceptance(VerifyLevel level);

/// One line per criterion, [PASS]/[FAIL] + residuals; returns all-passed.
bool report_acceptance(std::ostream& os, const std::vector<CriterionResult>& results);

} // namespace qwsink
