#ifndef KSLAB_ENVIRONMENT_HPP
#define KSLAB_ENVIRONMENT_HPP

#include "kslab/grid.hpp"

namespace kslab {

enum class ProfileKind { Constant, Tanh, Bump };

/** Shifting growth-rate profile r(x - ct).
 *
 * Tanh separates a poor left habitat (r -> r_minus < 0) from a good right
 * one (r -> r_plus > 0).  Bump is a bounded good habitat surrounded by poor
 * habitat on both sides (r_minus, r_plus < 0 < r_peak).  Constant is the
 * homogeneous baseline r == r_peak.
 */
struct EnvironmentProfile {
    ProfileKind kind = ProfileKind::Constant;
    double r_minus = 0.0;
    double r_plus = 0.0;
    double r_peak = 1.0;   // interior maximum; Bump and Constant
    double width = 1.0;    // transition/bump length scale
    double center = 0.0;   // profile center before shifting
    double shift_speed = 0.0; // c

    static EnvironmentProfile constant(double r, double c = 0.0);
    static EnvironmentProfile tanh_edge(double r_minus, double r_plus, double width,
                                        double center, double c);
    static EnvironmentProfile bump(double r_minus, double r_plus, double r_peak,
                                   double width, double center, double c);

    /** Static profile R(x) before shifting. */
    double at(double x) const;
    /** r(x - ct). */
    double evaluate(double x, double t) const { return at(x - shift_speed * t); }

    /** Throws std::invalid_argument when the case conditions are violated. */
    void validate() const;
};

/** Derived habitat constants: r_* = inf r, r^* = sup r, c^* = 2 sqrt(r^*). */
struct EnvConstants {
    double r_star_low = 0.0; // r_*
    double r_star = 0.0;     // r^*
    double c_star = 0.0;     // 2 sqrt(r^*)
};

/** Derives (r_*, r^*, c^*); rejects profiles with r^* <= 0. */
EnvConstants constants(const EnvironmentProfile& profile);

/** Node-wise r(x_i - ct). */
Field sample(const EnvironmentProfile& profile, const Grid& grid, double t);

} // namespace kslab

#endif
