#pragma once

#include <cmath>
#include <filesystem>
#include <string>

#include "bevocc/core/png_io.hpp"
#include "bevocc/io/serialization.hpp"
#include "bevocc/rasterizer/rasterizer.hpp"

namespace bevocc::io {

// Occupancy maps persist as one 8-bit grayscale PNG per channel
// (value = round(255 * p)) plus a JSON sidecar with the grid spec.

inline void save_occupancy_map(const rasterizer::OccupancyMap& map,
                               const std::filesystem::path& dir, const std::string& stem) {
    std::filesystem::create_directories(dir);
    auto write_channel = [&](const std::vector<double>& ch, const std::string& suffix) {
        Image8 img(map.spec.width, map.spec.height, 1);
        for (int y = 0; y < map.spec.height; ++y)
            for (int x = 0; x < map.spec.width; ++x)
                img.at(x, y)[0] = static_cast<std::uint8_t>(
                    std::lround(255.0 * ch[static_cast<size_t>(y) * map.spec.width + x]));
        write_png((dir / (stem + "_" + suffix + ".png")).string(), img);
    };
    write_channel(map.vehicle, "vehicle");
    write_channel(map.pedestrian, "pedestrian");
    save_json_file(dir / (stem + "_grid.json"), grid_spec_to_json(map.spec));
}

inline rasterizer::OccupancyMap load_occupancy_map(const std::filesystem::path& dir,
                                                   const std::string& stem) {
    const auto spec = grid_spec_from_json(load_json_file(dir / (stem + "_grid.json")));
    rasterizer::OccupancyMap map(spec);
    auto read_channel = [&](std::vector<double>& ch, const std::string& suffix) {
        const Image8 img = read_png((dir / (stem + "_" + suffix + ".png")).string());
        if (img.width != spec.width || img.height != spec.height || img.channels != 1)
            throw std::runtime_error("occupancy channel " + suffix + " does not match grid spec");
        for (int y = 0; y < spec.height; ++y)
            for (int x = 0; x < spec.width; ++x)
                ch[static_cast<size_t>(y) * spec.width + x] =
                    static_cast<double>(img.at(x, y)[0]) / 255.0;
    };
    read_channel(map.vehicle, "vehicle");
    read_channel(map.pedestrian, "pedestrian");
    return map;
}

}  // namespace bevocc::io
