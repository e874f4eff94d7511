#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "bevocc/core/rng.hpp"
#include "bevocc/geometry/calibration.hpp"

namespace testutil {

/// Fresh scratch directory under the system temp root; removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("bevocc_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

/// Random roadside-style calibration: elevated position, pitched down.
inline bevocc::geometry::CameraCalibration random_roadside_camera(bevocc::Rng& rng,
                                                                  int width = 320,
                                                                  int height = 180) {
    const double radius = rng.uniform(12.0, 30.0);
    const double angle = rng.uniform(0.0, 2.0 * M_PI);
    const Eigen::Vector3d pos(radius * std::cos(angle), radius * std::sin(angle),
                              rng.uniform(5.0, 8.0));
    const double yaw = std::atan2(-pos.y(), -pos.x()) + rng.uniform(-0.2, 0.2);
    const double pitch = rng.uniform(-25.0, -10.0) * M_PI / 180.0;
    return bevocc::geometry::make_camera(pos, yaw, pitch, width, height, M_PI / 2.0);
}

}  // namespace testutil
