#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bevocc/geometry/grid.hpp"

namespace bevocc::rasterizer {

enum class AgentClass { vehicle, pedestrian };

inline const char* to_string(AgentClass c) {
    return c == AgentClass::vehicle ? "vehicle" : "pedestrian";
}

inline AgentClass agent_class_from_string(const std::string& s) {
    if (s == "vehicle") return AgentClass::vehicle;
    if (s == "pedestrian") return AgentClass::pedestrian;
    throw std::invalid_argument("unknown agent class: " + s);
}

/// One traffic participant in one frame: planar pose plus footprint size.
struct AgentAnnotation {
    int agent_id = 0;
    AgentClass cls = AgentClass::vehicle;
    double x = 0.0;      // m
    double y = 0.0;      // m
    double theta = 0.0;  // rad, heading of the length axis
    double l = 0.0;      // m, along heading
    double w = 0.0;      // m, across heading
};

/// Per-class H x W grids of occupancy values in [0, 1].
struct OccupancyMap {
    geometry::BevGridSpec spec;
    std::vector<double> vehicle;    // row-major, spec.height * spec.width
    std::vector<double> pedestrian;

    explicit OccupancyMap(const geometry::BevGridSpec& s) : spec(s) {
        s.validate();
        const size_t n = static_cast<size_t>(s.height) * s.width;
        vehicle.assign(n, 0.0);
        pedestrian.assign(n, 0.0);
    }

    size_t cells() const { return vehicle.size(); }

    /// Binarized channel at the given threshold (default 0.5).
    static std::vector<std::uint8_t> binarize(const std::vector<double>& channel,
                                              double threshold = 0.5) {
        std::vector<std::uint8_t> out(channel.size());
        for (size_t i = 0; i < channel.size(); ++i) out[i] = channel[i] >= threshold ? 1 : 0;
        return out;
    }
};

/// Cell (i, j) is occupied iff its center lies inside the oriented rectangle
/// (boundary inclusive). Only cells inside the rectangle's bounding box are
/// visited; cells outside the grid are dropped.
inline std::vector<std::pair<int, int>> rasterize_vehicle(const AgentAnnotation& a,
                                                          const geometry::BevGridSpec& spec) {
    if (a.cls != AgentClass::vehicle)
        throw std::invalid_argument("rasterize_vehicle: annotation is not a vehicle");
    if (!(a.l > 0.0) || !(a.w > 0.0))
        throw std::invalid_argument("rasterize_vehicle: non-positive dimensions");
    spec.validate();

    const double c = std::cos(a.theta);
    const double s = std::sin(a.theta);
    const double hl = a.l / 2.0;
    const double hw = a.w / 2.0;

    // Bounding box of the rotated rectangle in world coordinates.
    const double rx = std::abs(c) * hl + std::abs(s) * hw;
    const double ry = std::abs(s) * hl + std::abs(c) * hw;
    const auto [g_lo_x, g_lo_y] = geometry::world_to_grid(a.x - rx, a.y - ry, spec);
    const auto [g_hi_x, g_hi_y] = geometry::world_to_grid(a.x + rx, a.y + ry, spec);

    const int j0 = std::max(0, static_cast<int>(std::floor(g_lo_x - 0.5)));
    const int j1 = std::min(spec.width - 1, static_cast<int>(std::ceil(g_hi_x)));
    const int i0 = std::max(0, static_cast<int>(std::floor(g_lo_y - 0.5)));
    const int i1 = std::min(spec.height - 1, static_cast<int>(std::ceil(g_hi_y)));

    std::vector<std::pair<int, int>> cells;
    for (int i = i0; i <= i1; ++i) {
        for (int j = j0; j <= j1; ++j) {
            const auto [px, py] = geometry::cell_center_world(i, j, spec);
            const double dx = px - a.x;
            const double dy = py - a.y;
            const double local_l = c * dx + s * dy;
            const double local_w = -s * dx + c * dy;
            if (std::abs(local_l) <= hl && std::abs(local_w) <= hw) cells.emplace_back(i, j);
        }
    }
    return cells;
}

/// Writes exp(-d^2 / (2 sigma^2)) around the pedestrian's grid position into
/// the channel via elementwise max, where d is the distance from each cell
/// center in cell units. Peak value is 1 when the pedestrian sits exactly on
/// a cell center. Truncated at 6 sigma.
inline void rasterize_pedestrian(const AgentAnnotation& a, const geometry::BevGridSpec& spec,
                                 double sigma, std::vector<double>& channel) {
    if (a.cls != AgentClass::pedestrian)
        throw std::invalid_argument("rasterize_pedestrian: annotation is not a pedestrian");
    if (!(sigma > 0.0)) throw std::invalid_argument("rasterize_pedestrian: sigma must be positive");
    spec.validate();

    const auto [g_x, g_y] = geometry::world_to_grid(a.x, a.y, spec);
    const double radius = 6.0 * sigma;
    const int j0 = std::max(0, static_cast<int>(std::floor(g_x - 0.5 - radius)));
    const int j1 = std::min(spec.width - 1, static_cast<int>(std::ceil(g_x - 0.5 + radius)));
    const int i0 = std::max(0, static_cast<int>(std::floor(g_y - 0.5 - radius)));
    const int i1 = std::min(spec.height - 1, static_cast<int>(std::ceil(g_y - 0.5 + radius)));

    for (int i = i0; i <= i1; ++i) {
        for (int j = j0; j <= j1; ++j) {
            const double dx = (j + 0.5) - g_x;
            const double dy = (i + 0.5) - g_y;
            const double d2 = dx * dx + dy * dy;
            if (d2 > radius * radius) continue;
            const double v = std::exp(-d2 / (2.0 * sigma * sigma));
            double& cell = channel[static_cast<size_t>(i) * spec.width + j];
            cell = std::max(cell, v);
        }
    }
}

inline constexpr double kDefaultPedestrianSigma = 1.0;  // cells

/// Vehicle channel: union of binary rasters. Pedestrian channel: max of the
/// Gaussian patches. Order-independent because both merges are max.
inline OccupancyMap build_ground_truth(const std::vector<AgentAnnotation>& annotations,
                                       const geometry::BevGridSpec& spec,
                                       double pedestrian_sigma = kDefaultPedestrianSigma) {
    OccupancyMap map(spec);
    for (const auto& a : annotations) {
        if (a.cls == AgentClass::vehicle) {
            for (const auto& [i, j] : rasterize_vehicle(a, spec))
                map.vehicle[static_cast<size_t>(i) * spec.width + j] = 1.0;
        } else {
            rasterize_pedestrian(a, spec, pedestrian_sigma, map.pedestrian);
        }
    }
    return map;
}

}  // namespace bevocc::rasterizer
