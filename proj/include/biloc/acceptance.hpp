#pragma once

// End-to-end acceptance checks AC-1 .. AC-10. Each criterion runs the real
// pipeline on seeded instances and reports the reference value next to what
// was computed.

#include <string>
#include <vector>

namespace biloc::acceptance {

struct CriterionResult {
    std::string id;
    std::string title;
    std::string reference;
    std::string computed;
    bool passed = false;
    double seconds = 0.0;
};

using Criterion = CriterionResult (*)();

struct CriterionEntry {
    const char* id;
    Criterion run;
};

const std::vector<CriterionEntry>& criteria();

/// Runs every criterion in order.
std::vector<CriterionResult> run_all();

/// Runs the criteria whose id is listed (all when the list is empty).
std::vector<CriterionResult> run_selected(const std::vector<std::string>& ids);

}  // namespace biloc::acceptance
