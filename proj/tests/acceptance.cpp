// Acceptance gate: runs every criterion at its stated tolerance and prints
// one pass/fail line each.  Exit code 0 iff all pass.

#include "kslab/verify.hpp"

#include <cstdio>
#include <iostream>

int main() {
    const auto results = kslab::run_all_criteria();
    bool all = true;
    double total = 0.0;
    for (const auto& r : results) {
        std::cout << kslab::format_check_line(r) << std::endl;
        all = all && r.pass;
        total += r.seconds;
    }
    std::printf("%zu checks, %s, %.1f s total\n", results.size(),
                all ? "all passed" : "FAILURES present", total);
    return all ? 0 : 1;
}
