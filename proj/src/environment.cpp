#include "kslab/environment.hpp"

#include <cmath>
#include <stdexcept>

namespace kslab {

EnvironmentProfile EnvironmentProfile::constant(double r, double c) {
    EnvironmentProfile p;
    p.kind = ProfileKind::Constant;
    p.r_peak = r;
    p.r_minus = r;
    p.r_plus = r;
    p.shift_speed = c;
    return p;
}

EnvironmentProfile EnvironmentProfile::tanh_edge(double r_minus, double r_plus, double width,
                                                 double center, double c) {
    EnvironmentProfile p;
    p.kind = ProfileKind::Tanh;
    p.r_minus = r_minus;
    p.r_plus = r_plus;
    p.width = width;
    p.center = center;
    p.shift_speed = c;
    p.r_peak = r_plus;
    p.validate();
    return p;
}

EnvironmentProfile EnvironmentProfile::bump(double r_minus, double r_plus, double r_peak,
                                            double width, double center, double c) {
    EnvironmentProfile p;
    p.kind = ProfileKind::Bump;
    p.r_minus = r_minus;
    p.r_plus = r_plus;
    p.r_peak = r_peak;
    p.width = width;
    p.center = center;
    p.shift_speed = c;
    p.validate();
    return p;
}

void EnvironmentProfile::validate() const {
    if (!(width > 0.0)) throw std::invalid_argument("profile width must be positive");
    switch (kind) {
    case ProfileKind::Constant:
        break;
    case ProfileKind::Tanh:
        if (!(r_minus < 0.0 && 0.0 < r_plus))
            throw std::invalid_argument("tanh profile needs r(-inf) < 0 < r(+inf)");
        break;
    case ProfileKind::Bump:
        if (!(r_minus < 0.0 && r_plus < 0.0))
            throw std::invalid_argument("bump profile needs r(+-inf) < 0");
        if (!(r_peak > 0.0))
            throw std::invalid_argument("bump profile needs r_peak > 0");
        break;
    }
}

double EnvironmentProfile::at(double x) const {
    const double s = (x - center) / width;
    switch (kind) {
    case ProfileKind::Constant:
        return r_peak;
    case ProfileKind::Tanh:
        return 0.5 * (r_plus + r_minus) + 0.5 * (r_plus - r_minus) * std::tanh(s);
    case ProfileKind::Bump: {
        // Convex blend between the peak and a tanh ramp through the tail
        // limits.  w == 1 only at the center, so sup r == r_peak exactly and
        // r stays >= min(r_minus, r_plus) everywhere.  With equal tails this
        // reduces to r_floor + (r_peak - r_floor) * exp(-s^2).
        const double w = std::exp(-s * s);
        const double tails = 0.5 * (r_plus + r_minus) + 0.5 * (r_plus - r_minus) * std::tanh(s);
        return w * r_peak + (1.0 - w) * tails;
    }
    }
    return r_peak;
}

EnvConstants constants(const EnvironmentProfile& profile) {
    EnvConstants ec;
    switch (profile.kind) {
    case ProfileKind::Constant:
        ec.r_star = profile.r_peak;
        ec.r_star_low = profile.r_peak;
        break;
    case ProfileKind::Tanh:
        ec.r_star = profile.r_plus;
        ec.r_star_low = profile.r_minus;
        break;
    case ProfileKind::Bump:
        ec.r_star = profile.r_peak;
        ec.r_star_low = std::min(profile.r_minus, profile.r_plus);
        break;
    }
    if (!(ec.r_star > 0.0)) throw std::invalid_argument("profile has r^* <= 0");
    ec.c_star = 2.0 * std::sqrt(ec.r_star);
    return ec;
}

Field sample(const EnvironmentProfile& profile, const Grid& grid, double t) {
    Field f(grid);
    const double shift = profile.shift_speed * t;
    for (std::size_t i = 0; i < grid.n_nodes; ++i) f[i] = profile.at(grid.node(i) - shift);
    return f;
}

} // namespace kslab
