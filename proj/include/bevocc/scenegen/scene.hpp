#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "bevocc/core/rng.hpp"
#include "bevocc/geometry/calibration.hpp"
#include "bevocc/rasterizer/rasterizer.hpp"

namespace bevocc::scenegen {

enum class SceneLayout { three_way, four_way, segment };

inline const char* to_string(SceneLayout l) {
    switch (l) {
        case SceneLayout::three_way: return "three_way";
        case SceneLayout::four_way: return "four_way";
        case SceneLayout::segment: return "segment";
    }
    return "?";
}

inline SceneLayout layout_from_string(const std::string& s) {
    if (s == "three_way") return SceneLayout::three_way;
    if (s == "four_way") return SceneLayout::four_way;
    if (s == "segment") return SceneLayout::segment;
    throw std::invalid_argument("unknown scene layout: " + s);
}

/// Everything needed to generate one scene deterministically. Identical spec
/// (including rng_seed) produces bit-identical output.
struct SceneSpec {
    std::string scene_id = "scene";
    SceneLayout layout = SceneLayout::four_way;
    int num_cameras = 4;
    std::array<double, 2> camera_height_range{5.0, 8.0};   // m
    double camera_max_range = 100.0;                       // m
    std::uint64_t rng_seed = 0;
    int num_frames = 100;
    std::array<int, 2> vehicle_count_range{4, 8};
    std::array<int, 2> pedestrian_count_range{2, 5};

    // Rendering / placement knobs (desk-scale defaults).
    int image_width = 320;
    int image_height = 180;
    double fov_x_rad = M_PI / 2.0;
    double roi_radius = 12.0;                              // m, region of interest
    std::array<double, 2> camera_pitch_range{-25.0 * M_PI / 180.0, -10.0 * M_PI / 180.0};
    std::array<int, 2> clutter_count_range{2, 5};          // parked-vehicle lookalikes
    double ground_tone_shift = 0.0;                        // brightens/darkens the ground
    double frame_dt = 0.5;                                 // s between frames

    void validate() const {
        if (scene_id.empty()) throw std::invalid_argument("SceneSpec: empty scene_id");
        if (num_cameras < 1) throw std::invalid_argument("SceneSpec: num_cameras must be >= 1");
        if (num_frames < 1) throw std::invalid_argument("SceneSpec: num_frames must be >= 1");
        auto check_range = [](double lo, double hi, const char* name) {
            if (!(lo > 0.0) || hi < lo)
                throw std::invalid_argument(std::string("SceneSpec: bad ") + name);
        };
        check_range(camera_height_range[0], camera_height_range[1], "camera_height_range");
        if (!(camera_max_range > 0.0))
            throw std::invalid_argument("SceneSpec: camera_max_range must be positive");
        auto check_counts = [](int lo, int hi, const char* name) {
            if (lo < 0 || hi < lo)
                throw std::invalid_argument(std::string("SceneSpec: bad ") + name);
        };
        check_counts(vehicle_count_range[0], vehicle_count_range[1], "vehicle_count_range");
        check_counts(pedestrian_count_range[0], pedestrian_count_range[1],
                     "pedestrian_count_range");
        check_counts(clutter_count_range[0], clutter_count_range[1], "clutter_count_range");
        if (image_width < 8 || image_height < 8)
            throw std::invalid_argument("SceneSpec: image size too small");
        if (!(fov_x_rad > 0.0) || !(fov_x_rad < M_PI))
            throw std::invalid_argument("SceneSpec: fov_x_rad out of range");
        if (!(roi_radius > 2.0)) throw std::invalid_argument("SceneSpec: roi_radius too small");
        if (!(camera_pitch_range[0] <= camera_pitch_range[1]) ||
            camera_pitch_range[0] <= -M_PI / 2.0 || camera_pitch_range[1] >= 0.0)
            throw std::invalid_argument("SceneSpec: camera_pitch_range must be within (-pi/2, 0)");
        if (!(frame_dt > 0.0)) throw std::invalid_argument("SceneSpec: frame_dt must be positive");
    }
};

struct Pose {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;
};

/// One moving agent with a pose per frame.
struct AgentTrack {
    int agent_id = 0;
    rasterizer::AgentClass cls = rasterizer::AgentClass::vehicle;
    double l = 0.0, w = 0.0, h = 0.0;     // m
    std::array<double, 3> color{0.5, 0.5, 0.5};
    std::vector<Pose> poses;              // one per frame
};

/// Static vehicle-sized block parked beside the road; part of the background.
struct StaticBlock {
    double x = 0.0, y = 0.0, theta = 0.0;
    double l = 0.0, w = 0.0, h = 0.0;
    std::array<double, 3> color{0.5, 0.5, 0.5};
};

/// Per-scene ground / sky appearance parameters.
struct ScenePalette {
    std::array<double, 3> asphalt{0.26, 0.26, 0.27};
    std::array<double, 3> grass{0.24, 0.34, 0.18};
    std::array<double, 3> marking{0.85, 0.84, 0.78};
    std::array<double, 3> sky_horizon{0.74, 0.80, 0.88};
    std::array<double, 3> sky_zenith{0.36, 0.52, 0.78};
    double mottle_amp = 0.03;
    std::array<double, 6> mottle{1.3, 2.1, 0.4, 1.7, 0.9, 2.6};  // freqs and phases
};

struct Scene {
    SceneSpec spec;
    std::vector<geometry::CameraCalibration> cameras;
    std::vector<AgentTrack> tracks;
    std::vector<StaticBlock> clutter;
    ScenePalette palette;
    std::vector<double> arm_angles;   // road arms radiating from the origin
    double road_half_width = 3.4;     // m
};

inline std::vector<rasterizer::AgentAnnotation> annotations_for_frame(const Scene& scene,
                                                                      int frame_id) {
    if (frame_id < 0 || frame_id >= scene.spec.num_frames)
        throw std::invalid_argument("annotations_for_frame: frame_id out of range");
    std::vector<rasterizer::AgentAnnotation> out;
    out.reserve(scene.tracks.size());
    for (const auto& t : scene.tracks) {
        const Pose& p = t.poses[static_cast<size_t>(frame_id)];
        out.push_back({t.agent_id, t.cls, p.x, p.y, p.theta, t.l, t.w});
    }
    return out;
}

namespace detail {

inline std::array<double, 3> jitter_color(Rng& rng, std::array<double, 3> base, double amp) {
    for (auto& c : base) c = std::clamp(c + rng.uniform(-amp, amp), 0.0, 1.0);
    return base;
}

inline std::array<double, 3> pick_vehicle_color(Rng& rng) {
    static constexpr std::array<std::array<double, 3>, 7> kBody{{{0.85, 0.85, 0.87},
                                                                 {0.15, 0.15, 0.17},
                                                                 {0.55, 0.08, 0.08},
                                                                 {0.10, 0.22, 0.50},
                                                                 {0.60, 0.60, 0.62},
                                                                 {0.75, 0.55, 0.15},
                                                                 {0.12, 0.38, 0.20}}};
    return jitter_color(rng, kBody[rng.uniform_int(0, kBody.size() - 1)], 0.04);
}

inline std::array<double, 3> pick_pedestrian_color(Rng& rng) {
    static constexpr std::array<std::array<double, 3>, 5> kCloth{{{0.70, 0.25, 0.20},
                                                                  {0.20, 0.30, 0.60},
                                                                  {0.25, 0.55, 0.30},
                                                                  {0.80, 0.70, 0.30},
                                                                  {0.30, 0.25, 0.35}}};
    return jitter_color(rng, kCloth[rng.uniform_int(0, kCloth.size() - 1)], 0.05);
}

inline std::vector<double> layout_arm_angles(SceneLayout layout, Rng& rng) {
    const double base = rng.uniform(0.0, 2.0 * M_PI);
    switch (layout) {
        case SceneLayout::four_way:
            return {base, base + M_PI / 2.0, base + M_PI, base + 1.5 * M_PI};
        case SceneLayout::three_way: {
            // T junction: a through road plus one side arm.
            const double side = base + (rng.bernoulli(0.5) ? M_PI / 2.0 : -M_PI / 2.0);
            return {base, base + M_PI, side};
        }
        case SceneLayout::segment:
            return {base, base + M_PI};
    }
    throw std::invalid_argument("layout_arm_angles: unknown layout");
}

/// Closed piecewise-linear loop walked at constant speed; pose at frame f is
/// the point at arc length (phase + speed * f * dt) mod loop length.
inline std::vector<Pose> walk_loop(const std::vector<std::array<double, 2>>& pts, double speed,
                                   double phase, int num_frames, double dt) {
    const size_t n = pts.size();
    std::vector<double> seg_len(n);
    double total = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const auto& a = pts[i];
        const auto& b = pts[(i + 1) % n];
        seg_len[i] = std::hypot(b[0] - a[0], b[1] - a[1]);
        total += seg_len[i];
    }
    if (!(total > 1e-6)) throw std::invalid_argument("walk_loop: degenerate waypoint loop");

    std::vector<Pose> poses(static_cast<size_t>(num_frames));
    for (int f = 0; f < num_frames; ++f) {
        double s = std::fmod(phase + speed * dt * f, total);
        if (s < 0.0) s += total;
        size_t i = 0;
        while (s > seg_len[i] && i + 1 < n) {
            s -= seg_len[i];
            ++i;
        }
        const auto& a = pts[i];
        const auto& b = pts[(i + 1) % n];
        const double inv = seg_len[i] > 1e-12 ? 1.0 / seg_len[i] : 0.0;
        const double u = std::min(s * inv, 1.0);
        poses[static_cast<size_t>(f)] = {a[0] + (b[0] - a[0]) * u, a[1] + (b[1] - a[1]) * u,
                                         std::atan2(b[1] - a[1], b[0] - a[0])};
    }
    return poses;
}

}  // namespace detail

/// Builds cameras, agent tracks, parked clutter and the palette from the
/// spec's seed. Cameras ring the region of interest, yawed at its center and
/// pitched down; vehicles drive lane-offset routes along the road arms;
/// pedestrians wander the region.
inline Scene generate_scene(const SceneSpec& spec) {
    spec.validate();
    Scene scene;
    scene.spec = spec;
    Rng root(spec.rng_seed);

    {
        Rng rng = root.fork("palette");
        auto& p = scene.palette;
        const double tone = spec.ground_tone_shift;
        p.asphalt = detail::jitter_color(rng, {0.26 + tone, 0.26 + tone, 0.27 + tone}, 0.05);
        p.grass = detail::jitter_color(rng, {0.24 + 0.5 * tone, 0.34 + 0.5 * tone, 0.18}, 0.06);
        p.marking = detail::jitter_color(rng, {0.85, 0.84, 0.78}, 0.05);
        p.sky_horizon = detail::jitter_color(rng, {0.74, 0.80, 0.88}, 0.04);
        p.sky_zenith = detail::jitter_color(rng, {0.36, 0.52, 0.78}, 0.06);
        p.mottle_amp = rng.uniform(0.02, 0.045);
        for (auto& m : p.mottle) m = rng.uniform(0.3, 2.8);
    }

    {
        Rng rng = root.fork("layout");
        scene.arm_angles = detail::layout_arm_angles(spec.layout, rng);
        scene.road_half_width = rng.uniform(3.1, 3.7);
    }

    {
        Rng rng = root.fork("cameras");
        for (int k = 0; k < spec.num_cameras; ++k) {
            const double slot = 2.0 * M_PI * k / spec.num_cameras;
            const double angle = slot + rng.uniform(-0.3, 0.3);
            const double radius = spec.roi_radius + rng.uniform(1.0, 5.0);
            const double height =
                rng.uniform(spec.camera_height_range[0], spec.camera_height_range[1]);
            const Eigen::Vector3d pos(radius * std::cos(angle), radius * std::sin(angle), height);
            const double yaw = std::atan2(-pos.y(), -pos.x()) + rng.uniform(-0.15, 0.15);
            const double pitch =
                rng.uniform(spec.camera_pitch_range[0], spec.camera_pitch_range[1]);
            scene.cameras.push_back(geometry::make_camera(pos, yaw, pitch, spec.image_width,
                                                          spec.image_height, spec.fov_x_rad));
        }
    }

    {
        Rng rng = root.fork("clutter");
        const int n = rng.uniform_int(spec.clutter_count_range[0], spec.clutter_count_range[1]);
        for (int k = 0; k < n; ++k) {
            const double phi =
                scene.arm_angles[rng.uniform_int(0, scene.arm_angles.size() - 1)];
            const double along = rng.uniform(4.0, spec.roi_radius - 1.0);
            const double side = rng.bernoulli(0.5) ? 1.0 : -1.0;
            const double off = scene.road_half_width + rng.uniform(1.2, 3.0);
            StaticBlock b;
            b.x = along * std::cos(phi) - side * off * std::sin(phi);
            b.y = along * std::sin(phi) + side * off * std::cos(phi);
            b.theta = phi + rng.uniform(-0.08, 0.08);
            b.l = rng.uniform(3.6, 4.8);
            b.w = rng.uniform(1.6, 2.0);
            b.h = rng.uniform(1.3, 1.7);
            b.color = detail::pick_vehicle_color(rng);
            scene.clutter.push_back(b);
        }
    }

    {
        Rng rng = root.fork("tracks");
        const int num_vehicles =
            rng.uniform_int(spec.vehicle_count_range[0], spec.vehicle_count_range[1]);
        const int num_pedestrians =
            rng.uniform_int(spec.pedestrian_count_range[0], spec.pedestrian_count_range[1]);
        const double lane_off = scene.road_half_width / 2.0;
        const double rc = 3.5;                      // junction turn radius anchor
        const double re = spec.roi_radius - 0.5;    // route end radius
        int next_id = 0;

        for (int k = 0; k < num_vehicles; ++k) {
            const size_t arms = scene.arm_angles.size();
            const size_t entry = rng.uniform_int(0, arms - 1);
            size_t exit = rng.uniform_int(0, arms - 2);
            if (exit >= entry) ++exit;
            const double pe = scene.arm_angles[entry];
            const double px = scene.arm_angles[exit];
            const std::array<double, 2> ue{std::cos(pe), std::sin(pe)};
            const std::array<double, 2> ux{std::cos(px), std::sin(px)};
            // Right-hand traffic: "right of heading (dx, dy)" is (dy, -dx).
            // Inbound travel direction is -ue, outbound is +ux.
            const std::array<double, 2> rin{-ue[1], ue[0]};
            const std::array<double, 2> rout{ux[1], -ux[0]};
            const std::vector<std::array<double, 2>> pts{
                {ue[0] * re + rin[0] * lane_off, ue[1] * re + rin[1] * lane_off},
                {ue[0] * rc + rin[0] * lane_off, ue[1] * rc + rin[1] * lane_off},
                {ux[0] * rc + rout[0] * lane_off, ux[1] * rc + rout[1] * lane_off},
                {ux[0] * re + rout[0] * lane_off, ux[1] * re + rout[1] * lane_off}};

            AgentTrack t;
            t.agent_id = next_id++;
            t.cls = rasterizer::AgentClass::vehicle;
            t.l = rng.uniform(3.8, 5.2);
            t.w = rng.uniform(1.7, 2.1);
            t.h = rng.uniform(1.35, 1.8);
            t.color = detail::pick_vehicle_color(rng);
            const double speed = rng.uniform(3.5, 7.5);
            const double phase = rng.uniform(0.0, 1.0) * 4.0 * re;  // anywhere on the loop
            t.poses = detail::walk_loop(pts, speed, phase, spec.num_frames, spec.frame_dt);
            scene.tracks.push_back(std::move(t));
        }

        for (int k = 0; k < num_pedestrians; ++k) {
            std::vector<std::array<double, 2>> pts;
            for (int j = 0; j < 4; ++j) {
                const double ang = rng.uniform(0.0, 2.0 * M_PI);
                const double rad = rng.uniform(2.0, spec.roi_radius - 1.0);
                pts.push_back({rad * std::cos(ang), rad * std::sin(ang)});
            }
            AgentTrack t;
            t.agent_id = next_id++;
            t.cls = rasterizer::AgentClass::pedestrian;
            t.l = 0.28;
            t.w = 0.28;
            t.h = rng.uniform(1.55, 1.85);
            t.color = detail::pick_pedestrian_color(rng);
            const double speed = rng.uniform(0.8, 1.5);
            const double phase = rng.uniform(0.0, 8.0 * spec.roi_radius);
            t.poses = detail::walk_loop(pts, speed, phase, spec.num_frames, spec.frame_dt);
            scene.tracks.push_back(std::move(t));
        }
    }

    return scene;
}

}  // namespace bevocc::scenegen
