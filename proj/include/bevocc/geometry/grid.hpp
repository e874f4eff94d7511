#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

namespace bevocc::geometry {

/// Origin, per-cell metric resolution and cell counts of the BEV occupancy
/// grid. Row index i runs along y, column index j along x; the center of cell
/// (i, j) sits at grid coordinates (g_x, g_y) = (j + 0.5, i + 0.5).
struct BevGridSpec {
    double x0 = 0.0;       // meters
    double y0 = 0.0;       // meters
    double dx = 0.31;      // meters per cell along x
    double dy = 0.31;      // meters per cell along y
    int height = 480;      // G_h, rows
    int width = 480;       // G_w, columns

    double extent_x() const { return width * dx; }
    double extent_y() const { return height * dy; }

    void validate() const {
        if (!(dx > 0.0) || !(dy > 0.0))
            throw std::invalid_argument("BevGridSpec: resolution must be positive");
        if (height < 1 || width < 1)
            throw std::invalid_argument("BevGridSpec: size must be >= 1 cell");
        if (!std::isfinite(x0) || !std::isfinite(y0))
            throw std::invalid_argument("BevGridSpec: non-finite origin");
    }

    bool operator==(const BevGridSpec&) const = default;
};

/// A footprint expressed in fractional grid cells.
struct GridFootprint {
    double g_x = 0.0;
    double g_y = 0.0;
    double g_l = 0.0;
    double g_w = 0.0;
    double theta = 0.0;  // rad, unchanged by the grid transform
};

inline std::pair<double, double> world_to_grid(double x, double y, const BevGridSpec& spec) {
    spec.validate();
    if (!std::isfinite(x) || !std::isfinite(y))
        throw std::invalid_argument("world_to_grid: non-finite input");
    return {(x - spec.x0) / spec.dx, (y - spec.y0) / spec.dy};
}

inline std::pair<double, double> dims_to_grid(double l, double w, const BevGridSpec& spec) {
    spec.validate();
    if (!std::isfinite(l) || !std::isfinite(w))
        throw std::invalid_argument("dims_to_grid: non-finite input");
    return {l / spec.dx, w / spec.dy};
}

inline std::pair<double, double> grid_to_world(double g_x, double g_y, const BevGridSpec& spec) {
    spec.validate();
    return {spec.x0 + g_x * spec.dx, spec.y0 + g_y * spec.dy};
}

/// World position of the center of cell (row, col).
inline std::pair<double, double> cell_center_world(int row, int col, const BevGridSpec& spec) {
    return grid_to_world(col + 0.5, row + 0.5, spec);
}

inline GridFootprint footprint_to_grid(double x, double y, double theta, double l, double w,
                                       const BevGridSpec& spec) {
    GridFootprint f;
    std::tie(f.g_x, f.g_y) = world_to_grid(x, y, spec);
    std::tie(f.g_l, f.g_w) = dims_to_grid(l, w, spec);
    f.theta = theta;
    return f;
}

}  // namespace bevocc::geometry
