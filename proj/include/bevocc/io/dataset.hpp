#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "bevocc/core/png_io.hpp"
#include "bevocc/core/tensor.hpp"
#include "bevocc/io/serialization.hpp"
#include "bevocc/scenegen/dataset.hpp"

namespace bevocc::io {

/// One scene as found on disk: calibrations, per-frame annotations and the
/// paths of the image files (images themselves are loaded on demand).
struct LoadedScene {
    std::string scene_id;
    std::filesystem::path dir;
    std::vector<geometry::CameraCalibration> cameras;
    std::vector<int> frame_ids;
    std::vector<std::vector<rasterizer::AgentAnnotation>> annotations;   // parallel to frame_ids

    std::filesystem::path background_path(int camera) const {
        return dir / ("cam" + std::to_string(camera)) / "background.png";
    }
    std::filesystem::path frame_path(int camera, int frame_id) const {
        return dir / ("cam" + std::to_string(camera)) / scenegen::frame_file_name(frame_id);
    }
};

struct Dataset {
    std::filesystem::path root;
    scenegen::DatasetManifest manifest;
    std::vector<LoadedScene> scenes;

    const LoadedScene& scene(const std::string& scene_id) const {
        for (const auto& s : scenes)
            if (s.scene_id == scene_id) return s;
        throw std::invalid_argument("dataset has no scene '" + scene_id + "'");
    }
};

inline LoadedScene load_scene(const std::filesystem::path& scene_dir,
                              const scenegen::ManifestSceneEntry& entry) {
    LoadedScene s;
    s.scene_id = entry.scene_id;
    s.dir = scene_dir;
    s.cameras = scenegen::calibration_from_json(load_json_file(scene_dir / "calibration.json"));
    if (static_cast<int>(s.cameras.size()) != entry.num_cameras)
        throw std::runtime_error("scene " + entry.scene_id + ": camera count mismatch between " +
                                 "manifest and calibration.json");

    std::ifstream ann(scene_dir / "annotations.jsonl");
    if (!ann)
        throw std::runtime_error("cannot open " + (scene_dir / "annotations.jsonl").string());
    std::string line;
    while (std::getline(ann, line)) {
        if (line.empty()) continue;
        int frame_id = 0;
        s.annotations.push_back(
            scenegen::annotation_record_from_json(json::parse(line), &frame_id));
        s.frame_ids.push_back(frame_id);
    }
    if (static_cast<int>(s.frame_ids.size()) != entry.num_frames)
        throw std::runtime_error("scene " + entry.scene_id + ": frame count mismatch between " +
                                 "manifest and annotations.jsonl");
    return s;
}

inline Dataset load_dataset(const std::filesystem::path& root) {
    Dataset ds;
    ds.root = root;
    ds.manifest = scenegen::DatasetManifest::from_json(load_json_file(root / "manifest.json"));
    for (const auto& entry : ds.manifest.scenes)
        ds.scenes.push_back(load_scene(root / entry.scene_id, entry));
    return ds;
}

/// RGB image to a (3, H, W) float tensor, values mapped to [-0.5, 0.5].
inline TensorF image_to_input_tensor(const Image8& img) {
    if (img.channels != 3) throw std::invalid_argument("image_to_input_tensor: expected RGB");
    TensorF t({3, img.height, img.width});
    const size_t plane = static_cast<size_t>(img.height) * img.width;
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            const std::uint8_t* p = img.at(x, y);
            const size_t k = static_cast<size_t>(y) * img.width + x;
            for (int c = 0; c < 3; ++c)
                t[static_cast<std::int64_t>(c) * plane + k] = p[c] / 255.0f - 0.5f;
        }
    }
    return t;
}

}  // namespace bevocc::io
