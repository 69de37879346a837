#ifndef KSLAB_GRID_HPP
#define KSLAB_GRID_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace kslab {

/** Uniform 1-D mesh on [x_min, x_max] with n_nodes nodes. */
struct Grid {
    double x_min = 0.0;
    double x_max = 1.0;
    std::size_t n_nodes = 3;

    Grid() = default;
    Grid(double a, double b, std::size_t n) : x_min(a), x_max(b), n_nodes(n) {
        if (n_nodes < 3) throw std::invalid_argument("Grid: need at least 3 nodes");
        if (!(x_max > x_min)) throw std::invalid_argument("Grid: x_max must exceed x_min");
    }

    /** Grid built from a target spacing; the spacing is adjusted so nodes fit exactly. */
    static Grid with_spacing(double a, double b, double h_target) {
        if (!(h_target > 0.0)) throw std::invalid_argument("Grid: spacing must be positive");
        auto n = static_cast<std::size_t>(std::llround((b - a) / h_target)) + 1;
        return Grid(a, b, n < 3 ? 3 : n);
    }

    double h() const { return (x_max - x_min) / static_cast<double>(n_nodes - 1); }
    double node(std::size_t i) const { return x_min + static_cast<double>(i) * h(); }
    double half_width() const { return 0.5 * (x_max - x_min); }

    bool operator==(const Grid&) const = default;
};

/** Node-sampled scalar field on a Grid. */
struct Field {
    Grid grid;
    std::vector<double> values;

    Field() = default;
    explicit Field(const Grid& g, double fill = 0.0) : grid(g), values(g.n_nodes, fill) {}

    std::size_t size() const { return values.size(); }
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }

    /** Linear interpolation at x; clamps to the boundary values outside the grid. */
    double interpolate(double x) const {
        const double h = grid.h();
        const double s = (x - grid.x_min) / h;
        if (s <= 0.0) return values.front();
        if (s >= static_cast<double>(values.size() - 1)) return values.back();
        const auto i = static_cast<std::size_t>(s);
        const double w = s - static_cast<double>(i);
        return (1.0 - w) * values[i] + w * values[i + 1];
    }
};

} // namespace kslab

#endif
