// Acceptance runner: one PASS/FAIL line per criterion, exit 1 if any fails.
// Optional arguments restrict the run to the listed ids (e.g. AC-1 AC-4).

#include <cstdio>
#include <string>
#include <vector>

#include "biloc/acceptance.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> ids(argv + 1, argv + argc);
    int failed = 0;
    for (const auto& r : biloc::acceptance::run_selected(ids)) {
        std::printf("%s %-5s %-26s %s (%.1fs)\n", r.passed ? "PASS" : "FAIL", r.id.c_str(), r.title.c_str(), r.computed.c_str(), r.seconds);
        std::fflush(stdout);
        if (!r.passed) ++failed;
    }
    std::printf("%d criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
