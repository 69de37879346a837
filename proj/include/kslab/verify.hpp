#ifndef KSLAB_VERIFY_HPP
#define KSLAB_VERIFY_HPP

#include <string>
#include <vector>

namespace kslab {

/** One acceptance criterion outcome. */
struct CheckResult {
    std::string id;     // "1", "7a", ...
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/** Suites runnable via `kslab verify <suite>`. */
std::vector<std::string> verify_suites();

/** Runs one named suite (kernel | spectral | fisher | case1 | case2 | bounds). */
std::vector<CheckResult> run_verify_suite(const std::string& suite);

/** Runs every acceptance criterion in order (the acceptance gate). */
std::vector<CheckResult> run_all_criteria();

/** Formats one pass/fail line. */
std::string format_check_line(const CheckResult& r);

} // namespace kslab

#endif
