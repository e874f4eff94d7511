#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <stdexcept>

namespace bevocc::geometry {

// Conventions used throughout:
//   * World frame: right-handed, z up, ground plane z = 0, lengths in meters.
//   * Camera frame: x right, y down, z forward (computer-vision convention);
//     p_cam = R * p_world + t.
//   * Image: origin top-left, u right, v down. Pixel (ix, iy) covers the unit
//     square [ix, ix+1) x [iy, iy+1); its center is (ix + 0.5, iy + 0.5).

/// Intrinsics, pose and image size of one static roadside camera.
struct CameraCalibration {
    Eigen::Matrix3d K = Eigen::Matrix3d::Identity();   // pixels
    Eigen::Matrix3d R = Eigen::Matrix3d::Identity();   // world -> camera rotation
    Eigen::Vector3d t = Eigen::Vector3d::Zero();       // world -> camera translation, meters
    int image_width = 0;
    int image_height = 0;

    /// Camera center in world coordinates: C = -R^T t.
    Eigen::Vector3d center() const { return -R.transpose() * t; }

    void validate() const {
        if (image_width <= 0 || image_height <= 0)
            throw std::invalid_argument("CameraCalibration: non-positive image size");
        if (K(1, 0) != 0.0 || K(2, 0) != 0.0 || K(2, 1) != 0.0)
            throw std::invalid_argument("CameraCalibration: K must be upper-triangular");
        if (K(0, 0) <= 0.0 || K(1, 1) <= 0.0)
            throw std::invalid_argument("CameraCalibration: focal lengths must be positive");
        const double ortho = (R.transpose() * R - Eigen::Matrix3d::Identity()).norm();
        if (!(ortho < 1e-9))
            throw std::invalid_argument("CameraCalibration: R not orthonormal (||R^T R - I|| = " +
                                        std::to_string(ortho) + ")");
    }
};

/// Result of projecting a world point: continuous pixel coordinates plus the
/// camera-frame depth. Points with depth <= 0 lie behind the camera.
struct PixelProjection {
    double u = 0.0;
    double v = 0.0;
    double depth = 0.0;

    bool in_front() const { return depth > 0.0; }

    bool inside_image(int width, int height) const {
        return in_front() && u >= 0.0 && u < static_cast<double>(width) && v >= 0.0 &&
               v < static_cast<double>(height);
    }
};

inline PixelProjection project_world_point(const CameraCalibration& calib,
                                           const Eigen::Vector3d& p_world) {
    const Eigen::Vector3d p_cam = calib.R * p_world + calib.t;
    const Eigen::Vector3d h = calib.K * p_cam;
    PixelProjection out;
    out.depth = p_cam.z();
    if (p_cam.z() != 0.0) {
        out.u = h.x() / h.z();
        out.v = h.y() / h.z();
    }
    return out;
}

/// Pinhole intrinsics for a horizontal field of view. 90 degrees at width 320
/// gives f = 160 px. Principal point at the image center.
inline Eigen::Matrix3d intrinsics_from_fov(int width, int height, double fov_x_rad) {
    if (width <= 0 || height <= 0 || !(fov_x_rad > 0.0) || !(fov_x_rad < M_PI))
        throw std::invalid_argument("intrinsics_from_fov: bad arguments");
    const double f = width / (2.0 * std::tan(fov_x_rad / 2.0));
    Eigen::Matrix3d K = Eigen::Matrix3d::Identity();
    K(0, 0) = f;
    K(1, 1) = f;
    K(0, 2) = width / 2.0;
    K(1, 2) = height / 2.0;
    return K;
}

/// World->camera rotation for a camera at `position` looking along yaw/pitch.
/// Yaw is measured in the world xy plane (0 = +x), pitch < 0 tilts downward.
inline Eigen::Matrix3d rotation_from_yaw_pitch(double yaw, double pitch) {
    const Eigen::Vector3d forward(std::cos(pitch) * std::cos(yaw),
                                  std::cos(pitch) * std::sin(yaw), std::sin(pitch));
    Eigen::Vector3d right = forward.cross(Eigen::Vector3d::UnitZ());
    const double n = right.norm();
    if (n < 1e-9) {
        // Straight up/down: take the yaw-continuous limit.
        right = Eigen::Vector3d(std::sin(yaw), -std::cos(yaw), 0.0);
    } else {
        right /= n;
    }
    const Eigen::Vector3d down = forward.cross(right);
    Eigen::Matrix3d R;
    R.row(0) = right;
    R.row(1) = down;
    R.row(2) = forward;
    return R;
}

inline CameraCalibration make_camera(const Eigen::Vector3d& position, double yaw, double pitch,
                                     int width, int height, double fov_x_rad) {
    CameraCalibration c;
    c.K = intrinsics_from_fov(width, height, fov_x_rad);
    c.R = rotation_from_yaw_pitch(yaw, pitch);
    c.t = -c.R * position;
    c.image_width = width;
    c.image_height = height;
    c.validate();
    return c;
}

}  // namespace bevocc::geometry
