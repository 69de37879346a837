#ifndef KSLAB_ERRORS_HPP
#define KSLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kslab {

/** Malformed or inconsistent configuration input. */
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/** Numerical failure mid-run: CFL violation, NaN/Inf, non-convergence. */
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace kslab

#endif
