#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "bevocc/geometry/calibration.hpp"

namespace bevocc::geometry {

/// Ground-plane homography H = K [r1 r2 t]: maps (x, y, 1) on the z = 0 plane
/// to homogeneous pixel coordinates, identical to the full 3x4 projection
/// restricted to ground points. The homogeneous scale equals the camera-frame
/// depth, so its sign carries the cheirality test.
inline Eigen::Matrix3d ground_homography(const CameraCalibration& calib) {
    Eigen::Matrix3d P;
    P.col(0) = calib.R.col(0);
    P.col(1) = calib.R.col(1);
    P.col(2) = calib.t;
    const Eigen::Matrix3d H = calib.K * P;
    if (std::abs(H.determinant()) < 1e-12)
        throw std::invalid_argument("ground_homography: degenerate pose (camera in the ground plane)");
    return H;
}

/// Applies a ground homography to world point (x, y, 0).
inline PixelProjection apply_ground_homography(const Eigen::Matrix3d& H, double x, double y) {
    const Eigen::Vector3d h = H * Eigen::Vector3d(x, y, 1.0);
    PixelProjection out;
    out.depth = h.z();
    if (h.z() != 0.0) {
        out.u = h.x() / h.z();
        out.v = h.y() / h.z();
    }
    return out;
}

}  // namespace bevocc::geometry
