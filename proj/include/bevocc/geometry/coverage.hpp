#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bevocc/geometry/calibration.hpp"
#include "bevocc/geometry/grid.hpp"
#include "bevocc/geometry/homography.hpp"

namespace bevocc::geometry {

/// Boolean BEV grid; one per camera plus their elementwise OR.
struct CoverageMask {
    int height = 0;
    int width = 0;
    std::vector<std::vector<std::uint8_t>> per_camera;  // [camera][row * width + col]
    std::vector<std::uint8_t> combined;

    bool covered(int camera, int row, int col) const {
        return per_camera[camera][static_cast<size_t>(row) * width + col] != 0;
    }
    bool any_covered(int row, int col) const {
        return combined[static_cast<size_t>(row) * width + col] != 0;
    }
};

/// A cell is covered by a camera iff its center is in front of the camera,
/// projects inside the image bounds and lies within max_range meters
/// (horizontal ground distance) of the camera. Cell centers only; partial
/// cells are not fractionally covered.
inline std::vector<std::uint8_t> camera_coverage(const CameraCalibration& calib,
                                                 const BevGridSpec& spec, double max_range) {
    spec.validate();
    const Eigen::Matrix3d H = ground_homography(calib);
    const Eigen::Vector3d cam = calib.center();
    std::vector<std::uint8_t> mask(static_cast<size_t>(spec.height) * spec.width, 0);
    for (int i = 0; i < spec.height; ++i) {
        for (int j = 0; j < spec.width; ++j) {
            const auto [x, y] = cell_center_world(i, j, spec);
            const PixelProjection p = apply_ground_homography(H, x, y);
            if (!p.inside_image(calib.image_width, calib.image_height)) continue;
            const double ddx = x - cam.x();
            const double ddy = y - cam.y();
            if (ddx * ddx + ddy * ddy > max_range * max_range) continue;
            mask[static_cast<size_t>(i) * spec.width + j] = 1;
        }
    }
    return mask;
}

inline CoverageMask compute_coverage(const std::vector<CameraCalibration>& calibs,
                                     const BevGridSpec& spec, double max_range) {
    CoverageMask cm;
    cm.height = spec.height;
    cm.width = spec.width;
    cm.combined.assign(static_cast<size_t>(spec.height) * spec.width, 0);
    for (const auto& calib : calibs) {
        cm.per_camera.push_back(camera_coverage(calib, spec, max_range));
        const auto& m = cm.per_camera.back();
        for (size_t k = 0; k < m.size(); ++k) cm.combined[k] |= m[k];
    }
    return cm;
}

/// Places a fixed-size, fixed-resolution grid so it is centered on the
/// centroid of the union of the cameras' ground footprints (clipped at
/// max_range). The footprint union is sampled on a lattice anchored at the
/// mean camera position, which makes the result exactly translation
/// equivariant. Resolution is never altered.
inline BevGridSpec fit_grid_to_coverage(const std::vector<CameraCalibration>& calibs,
                                        double resolution, int size, double max_range) {
    if (calibs.empty()) throw std::invalid_argument("fit_grid_to_coverage: no calibrations");
    if (!(resolution > 0.0) || size < 1 || !(max_range > 0.0))
        throw std::invalid_argument("fit_grid_to_coverage: bad grid parameters");

    Eigen::Vector2d anchor = Eigen::Vector2d::Zero();
    for (const auto& c : calibs) anchor += c.center().head<2>();
    anchor /= static_cast<double>(calibs.size());

    std::vector<Eigen::Matrix3d> hs;
    std::vector<Eigen::Vector2d> centers;
    for (const auto& c : calibs) {
        hs.push_back(ground_homography(c));
        centers.push_back(c.center().head<2>());
    }

    // Coverage sampled at a fixed step; the grid itself is not involved.
    const double step = 0.5;
    const int half = static_cast<int>(std::ceil(max_range / step)) + 1;
    double sum_x = 0.0, sum_y = 0.0;
    std::int64_t count = 0;
    for (int iy = -half; iy <= half; ++iy) {
        for (int ix = -half; ix <= half; ++ix) {
            const double x = anchor.x() + ix * step;
            const double y = anchor.y() + iy * step;
            bool covered = false;
            for (size_t k = 0; k < hs.size() && !covered; ++k) {
                const PixelProjection p = apply_ground_homography(hs[k], x, y);
                if (!p.inside_image(calibs[k].image_width, calibs[k].image_height)) continue;
                const double ddx = x - centers[k].x();
                const double ddy = y - centers[k].y();
                covered = ddx * ddx + ddy * ddy <= max_range * max_range;
            }
            if (covered) {
                sum_x += x;
                sum_y += y;
                ++count;
            }
        }
    }
    if (count == 0) throw std::invalid_argument("fit_grid_to_coverage: empty coverage union");

    const double cx = sum_x / static_cast<double>(count);
    const double cy = sum_y / static_cast<double>(count);
    BevGridSpec spec;
    spec.dx = resolution;
    spec.dy = resolution;
    spec.width = size;
    spec.height = size;
    spec.x0 = cx - spec.extent_x() / 2.0;
    spec.y0 = cy - spec.extent_y() / 2.0;
    return spec;
}

}  // namespace bevocc::geometry
