#pragma once

// Independent reference implementations the suites check against. Everything
// here is deliberately brute force and shares no code with the library paths
// it verifies.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "bevocc/core/tensor.hpp"
#include "bevocc/geometry/calibration.hpp"
#include "bevocc/geometry/grid.hpp"
#include "bevocc/rasterizer/rasterizer.hpp"

namespace oracles {

/// Full 3x4 pinhole projection of a ground point (x, y, 0).
inline Eigen::Vector2d project_ground_point_full(const bevocc::geometry::CameraCalibration& c,
                                                 double x, double y, double* depth = nullptr) {
    Eigen::Matrix<double, 3, 4> P;
    P.block<3, 3>(0, 0) = c.R;
    P.col(3) = c.t;
    const Eigen::Vector3d h = c.K * (P * Eigen::Vector4d(x, y, 0.0, 1.0));
    if (depth) *depth = (c.R * Eigen::Vector3d(x, y, 0.0) + c.t).z();
    return {h.x() / h.z(), h.y() / h.z()};
}

/// Point-in-rotated-rectangle test over every cell of the grid, using the
/// separating projections onto the rectangle's edge axes.
inline std::set<std::pair<int, int>> rasterize_vehicle_bruteforce(
    const bevocc::rasterizer::AgentAnnotation& a, const bevocc::geometry::BevGridSpec& spec) {
    const Eigen::Vector2d center(a.x, a.y);
    const Eigen::Vector2d axis_l(std::cos(a.theta), std::sin(a.theta));
    const Eigen::Vector2d axis_w(-std::sin(a.theta), std::cos(a.theta));
    std::set<std::pair<int, int>> cells;
    for (int i = 0; i < spec.height; ++i) {
        for (int j = 0; j < spec.width; ++j) {
            const Eigen::Vector2d p(spec.x0 + (j + 0.5) * spec.dx, spec.y0 + (i + 0.5) * spec.dy);
            const Eigen::Vector2d d = p - center;
            if (std::abs(d.dot(axis_l)) <= a.l / 2.0 && std::abs(d.dot(axis_w)) <= a.w / 2.0)
                cells.insert({i, j});
        }
    }
    return cells;
}

/// Set-based IoU on explicit cell-index sets.
inline double iou_from_sets(const std::set<size_t>& m, const std::set<size_t>& o) {
    size_t inter = 0;
    for (size_t idx : m) inter += o.count(idx);
    const size_t uni = m.size() + o.size() - inter;
    if (uni == 0) return 1.0;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

/// Central finite differences of a scalar function with respect to x.
inline bevocc::TensorD fd_gradient(const std::function<double()>& f, bevocc::TensorD& x,
                                   double eps = 1e-5) {
    bevocc::TensorD g(x.shape());
    for (std::int64_t i = 0; i < x.numel(); ++i) {
        const double orig = x[i];
        x[i] = orig + eps;
        const double fp = f();
        x[i] = orig - eps;
        const double fm = f();
        x[i] = orig;
        g[i] = (fp - fm) / (2.0 * eps);
    }
    return g;
}

/// Max mismatch |a - b| / (atol + rtol * max(|a|, |b|)); <= 1 means pass.
inline double grad_mismatch(const bevocc::TensorD& analytic, const bevocc::TensorD& fd,
                            double rtol = 1e-4, double atol = 1e-7) {
    double worst = 0.0;
    for (std::int64_t i = 0; i < analytic.numel(); ++i) {
        const double denom = atol + rtol * std::max(std::abs(analytic[i]), std::abs(fd[i]));
        worst = std::max(worst, std::abs(analytic[i] - fd[i]) / denom);
    }
    return worst;
}

}  // namespace oracles
