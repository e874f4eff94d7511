#pragma once

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "bevocc/core/png_io.hpp"
#include "bevocc/io/serialization.hpp"
#include "bevocc/scenegen/render.hpp"
#include "bevocc/scenegen/scene.hpp"

namespace bevocc::scenegen {

struct ManifestSceneEntry {
    std::string scene_id;
    std::string layout;
    int num_cameras = 0;
    int num_frames = 0;
    int image_width = 0;
    int image_height = 0;
    std::uint64_t rng_seed = 0;
};

struct DatasetManifest {
    std::vector<ManifestSceneEntry> scenes;

    io::json to_json() const {
        io::json out;
        out["scenes"] = io::json::array();
        for (const auto& s : scenes) {
            out["scenes"].push_back({{"scene_id", s.scene_id},
                                     {"layout", s.layout},
                                     {"num_cameras", s.num_cameras},
                                     {"num_frames", s.num_frames},
                                     {"image_width", s.image_width},
                                     {"image_height", s.image_height},
                                     {"rng_seed", s.rng_seed}});
        }
        return out;
    }

    static DatasetManifest from_json(const io::json& j) {
        io::require_keys_subset(j, {"scenes"}, "manifest");
        DatasetManifest m;
        for (const auto& e : j.at("scenes")) {
            io::require_keys_subset(e,
                                    {"scene_id", "layout", "num_cameras", "num_frames",
                                     "image_width", "image_height", "rng_seed"},
                                    "manifest scene entry");
            ManifestSceneEntry s;
            s.scene_id = e.at("scene_id").get<std::string>();
            s.layout = e.at("layout").get<std::string>();
            s.num_cameras = e.at("num_cameras").get<int>();
            s.num_frames = e.at("num_frames").get<int>();
            s.image_width = e.at("image_width").get<int>();
            s.image_height = e.at("image_height").get<int>();
            s.rng_seed = e.at("rng_seed").get<std::uint64_t>();
            m.scenes.push_back(std::move(s));
        }
        return m;
    }
};

inline std::string frame_file_name(int frame_id) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "frame%04d.png", frame_id);
    return buf;
}

inline io::json calibration_to_json(const std::vector<geometry::CameraCalibration>& cams) {
    io::json out;
    out["cameras"] = io::json::array();
    for (const auto& c : cams) {
        std::vector<double> K(9), R(9), t(3);
        for (int r = 0; r < 3; ++r)
            for (int col = 0; col < 3; ++col) {
                K[static_cast<size_t>(r) * 3 + col] = c.K(r, col);
                R[static_cast<size_t>(r) * 3 + col] = c.R(r, col);
            }
        for (int r = 0; r < 3; ++r) t[static_cast<size_t>(r)] = c.t(r);
        out["cameras"].push_back({{"K", K},
                                  {"R", R},
                                  {"t", t},
                                  {"width", c.image_width},
                                  {"height", c.image_height}});
    }
    return out;
}

inline std::vector<geometry::CameraCalibration> calibration_from_json(const io::json& j) {
    io::require_keys_subset(j, {"cameras"}, "calibration file");
    std::vector<geometry::CameraCalibration> cams;
    for (const auto& e : j.at("cameras")) {
        io::require_keys_subset(e, {"K", "R", "t", "width", "height"}, "camera calibration");
        geometry::CameraCalibration c;
        const auto K = e.at("K").get<std::vector<double>>();
        const auto R = e.at("R").get<std::vector<double>>();
        const auto t = e.at("t").get<std::vector<double>>();
        if (K.size() != 9 || R.size() != 9 || t.size() != 3)
            throw std::invalid_argument("camera calibration: K/R/t must be 9/9/3 numbers");
        for (int r = 0; r < 3; ++r)
            for (int col = 0; col < 3; ++col) {
                c.K(r, col) = K[static_cast<size_t>(r) * 3 + col];
                c.R(r, col) = R[static_cast<size_t>(r) * 3 + col];
            }
        for (int r = 0; r < 3; ++r) c.t(r) = t[static_cast<size_t>(r)];
        c.image_width = e.at("width").get<int>();
        c.image_height = e.at("height").get<int>();
        c.validate();
        cams.push_back(c);
    }
    return cams;
}

inline io::json annotation_record_to_json(int frame_id,
                                          const std::vector<rasterizer::AgentAnnotation>& agents) {
    io::json rec;
    rec["frame_id"] = frame_id;
    rec["agents"] = io::json::array();
    for (const auto& a : agents) {
        rec["agents"].push_back({{"agent_id", a.agent_id},
                                 {"class", rasterizer::to_string(a.cls)},
                                 {"x", a.x},
                                 {"y", a.y},
                                 {"theta", a.theta},
                                 {"l", a.l},
                                 {"w", a.w}});
    }
    return rec;
}

inline std::vector<rasterizer::AgentAnnotation> annotation_record_from_json(const io::json& rec,
                                                                            int* frame_id) {
    io::require_keys_subset(rec, {"frame_id", "agents"}, "annotation record");
    if (frame_id) *frame_id = rec.at("frame_id").get<int>();
    std::vector<rasterizer::AgentAnnotation> agents;
    for (const auto& a : rec.at("agents")) {
        io::require_keys_subset(a, {"agent_id", "class", "x", "y", "theta", "l", "w"},
                                "agent annotation");
        rasterizer::AgentAnnotation ann;
        ann.agent_id = a.at("agent_id").get<int>();
        ann.cls = rasterizer::agent_class_from_string(a.at("class").get<std::string>());
        ann.x = a.at("x").get<double>();
        ann.y = a.at("y").get<double>();
        ann.theta = a.at("theta").get<double>();
        ann.l = a.at("l").get<double>();
        ann.w = a.at("w").get<double>();
        agents.push_back(ann);
    }
    return agents;
}

/// Renders every scene to `<out_dir>/<scene_id>/...` and writes the manifest.
/// Statics are rendered once per camera; re-export overwrites in place and is
/// byte-identical for identical scenes.
inline DatasetManifest export_dataset(const std::vector<Scene>& scenes,
                                      const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    DatasetManifest manifest;
    fs::create_directories(out_dir);

    for (const auto& scene : scenes) {
        const fs::path scene_dir = out_dir / scene.spec.scene_id;
        fs::create_directories(scene_dir);
        io::save_json_file(scene_dir / "calibration.json", calibration_to_json(scene.cameras));

        std::vector<StaticRender> statics;
        for (size_t k = 0; k < scene.cameras.size(); ++k) {
            const fs::path cam_dir = scene_dir / ("cam" + std::to_string(k));
            fs::create_directories(cam_dir);
            statics.push_back(render_static(scene, static_cast<int>(k)));
            write_png((cam_dir / "background.png").string(), statics.back().image);
        }

        std::ofstream ann(scene_dir / "annotations.jsonl");
        if (!ann)
            throw std::runtime_error("cannot write " + (scene_dir / "annotations.jsonl").string());
        for (int f = 0; f < scene.spec.num_frames; ++f) {
            for (size_t k = 0; k < scene.cameras.size(); ++k) {
                auto [img, boxes] =
                    render_agents_over(scene, f, static_cast<int>(k), statics[k]);
                const fs::path cam_dir = scene_dir / ("cam" + std::to_string(k));
                write_png((cam_dir / frame_file_name(f)).string(), img);
            }
            ann << annotation_record_to_json(f, annotations_for_frame(scene, f)).dump() << "\n";
        }

        manifest.scenes.push_back({scene.spec.scene_id, to_string(scene.spec.layout),
                                   static_cast<int>(scene.cameras.size()), scene.spec.num_frames,
                                   scene.spec.image_width, scene.spec.image_height,
                                   scene.spec.rng_seed});
    }

    io::save_json_file(out_dir / "manifest.json", manifest.to_json());
    return manifest;
}

}  // namespace bevocc::scenegen
