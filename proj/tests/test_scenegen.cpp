#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "bevocc/io/dataset.hpp"
#include "bevocc/scenegen/dataset.hpp"
#include "bevocc/scenegen/render.hpp"
#include "bevocc/scenegen/scene.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace bevocc;
using namespace bevocc::scenegen;

namespace {

SceneSpec small_spec(std::uint64_t seed, const std::string& id = "s0") {
    SceneSpec spec;
    spec.scene_id = id;
    spec.rng_seed = seed;
    spec.num_frames = 4;
    spec.image_width = 160;
    spec.image_height = 90;
    spec.vehicle_count_range = {3, 5};
    spec.pedestrian_count_range = {1, 3};
    return spec;
}

std::vector<char> read_bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(SceneGen, DeterministicForIdenticalSpec) {
    const auto spec = small_spec(7);
    const Scene a = generate_scene(spec);
    const Scene b = generate_scene(spec);

    ASSERT_EQ(a.cameras.size(), b.cameras.size());
    for (size_t k = 0; k < a.cameras.size(); ++k) {
        EXPECT_EQ((a.cameras[k].K - b.cameras[k].K).norm(), 0.0);
        EXPECT_EQ((a.cameras[k].R - b.cameras[k].R).norm(), 0.0);
        EXPECT_EQ((a.cameras[k].t - b.cameras[k].t).norm(), 0.0);
    }
    ASSERT_EQ(a.tracks.size(), b.tracks.size());
    for (size_t k = 0; k < a.tracks.size(); ++k) {
        EXPECT_EQ(a.tracks[k].l, b.tracks[k].l);
        for (size_t f = 0; f < a.tracks[k].poses.size(); ++f) {
            EXPECT_EQ(a.tracks[k].poses[f].x, b.tracks[k].poses[f].x);
            EXPECT_EQ(a.tracks[k].poses[f].y, b.tracks[k].poses[f].y);
            EXPECT_EQ(a.tracks[k].poses[f].theta, b.tracks[k].poses[f].theta);
        }
    }

    const RenderedFrame fa = render_frame(a, 1);
    const RenderedFrame fb = render_frame(b, 1);
    for (size_t k = 0; k < fa.images.size(); ++k) {
        EXPECT_EQ(fa.images[k], fb.images[k]);
        EXPECT_EQ(fa.backgrounds[k], fb.backgrounds[k]);
    }
}

TEST(SceneGen, DifferentSeedsDiffer) {
    const Scene a = generate_scene(small_spec(7));
    const Scene b = generate_scene(small_spec(8));
    EXPECT_GT((a.cameras[0].t - b.cameras[0].t).norm(), 0.0);
}

TEST(SceneGen, CameraHeightsWithinRange) {
    auto spec = small_spec(3);
    spec.layout = SceneLayout::four_way;
    const Scene scene = generate_scene(spec);
    ASSERT_EQ(scene.cameras.size(), 4u);
    for (const auto& cam : scene.cameras) {
        const double h = cam.center().z();
        EXPECT_GE(h, spec.camera_height_range[0]);
        EXPECT_LE(h, spec.camera_height_range[1]);
        EXPECT_NEAR(cam.K(0, 0), spec.image_width / 2.0, 1e-9);   // f = W/2 at 90 deg FOV
    }
}

TEST(SceneGen, AllLayoutsGenerate) {
    for (auto layout : {SceneLayout::three_way, SceneLayout::four_way, SceneLayout::segment}) {
        auto spec = small_spec(11);
        spec.layout = layout;
        const Scene scene = generate_scene(spec);
        const size_t expected_arms = layout == SceneLayout::four_way  ? 4
                                     : layout == SceneLayout::three_way ? 3
                                                                        : 2;
        EXPECT_EQ(scene.arm_angles.size(), expected_arms);
        EXPECT_FALSE(scene.tracks.empty());
    }
}

TEST(SceneGen, PosesStayWithinRegionOfInterest) {
    const Scene scene = generate_scene(small_spec(13));
    for (const auto& t : scene.tracks) {
        for (const auto& p : t.poses) {
            EXPECT_LE(std::hypot(p.x, p.y), scene.spec.roi_radius + 1e-6)
                << "agent " << t.agent_id;
        }
        if (t.cls == rasterizer::AgentClass::pedestrian) {
            EXPECT_LE(t.l, 0.31);
            EXPECT_LE(t.w, 0.31);
        }
    }
}

TEST(SceneGen, EmptySceneRendersAsBackground) {
    auto spec = small_spec(17);
    spec.vehicle_count_range = {0, 0};
    spec.pedestrian_count_range = {0, 0};
    const Scene scene = generate_scene(spec);
    EXPECT_TRUE(scene.tracks.empty());
    const RenderedFrame f = render_frame(scene, 0);
    for (size_t k = 0; k < f.images.size(); ++k) {
        EXPECT_EQ(f.images[k], f.backgrounds[k]);
        EXPECT_TRUE(f.boxes[k].empty());
    }
}

TEST(SceneGen, PixelsOutsideAgentBoxesMatchBackground) {
    const Scene scene = generate_scene(small_spec(19));
    const RenderedFrame f = render_frame(scene, 2);
    for (size_t k = 0; k < f.images.size(); ++k) {
        const auto& img = f.images[k];
        const auto& bg = f.backgrounds[k];
        std::vector<std::uint8_t> inside(static_cast<size_t>(img.width) * img.height, 0);
        for (const auto& b : f.boxes[k])
            for (int y = b.y_min; y <= b.y_max; ++y)
                for (int x = b.x_min; x <= b.x_max; ++x)
                    inside[static_cast<size_t>(y) * img.width + x] = 1;
        size_t differing_outside = 0;
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x) {
                if (inside[static_cast<size_t>(y) * img.width + x]) continue;
                if (std::memcmp(img.at(x, y), bg.at(x, y), 3) != 0) ++differing_outside;
            }
        EXPECT_EQ(differing_outside, 0u) << "camera " << k;
    }
}

TEST(SceneGen, ValidationRejectsBadSpecs) {
    auto spec = small_spec(1);
    spec.num_cameras = 0;
    EXPECT_THROW(generate_scene(spec), std::invalid_argument);
    spec = small_spec(1);
    spec.num_frames = 0;
    EXPECT_THROW(generate_scene(spec), std::invalid_argument);
    spec = small_spec(1);
    spec.vehicle_count_range = {5, 2};
    EXPECT_THROW(generate_scene(spec), std::invalid_argument);
}

namespace {

/// Scene with a single hand-placed vehicle and one camera; no clutter.
Scene single_agent_scene(const geometry::CameraCalibration& cam, double x, double y,
                         double theta, double l = 4.4, double w = 1.9, double h = 1.6) {
    SceneSpec spec;
    spec.scene_id = "probe";
    spec.num_frames = 1;
    spec.image_width = cam.image_width;
    spec.image_height = cam.image_height;
    Scene scene;
    scene.spec = spec;
    scene.cameras = {cam};
    scene.arm_angles = {0.0, M_PI};
    AgentTrack t;
    t.agent_id = 0;
    t.cls = rasterizer::AgentClass::vehicle;
    t.l = l;
    t.w = w;
    t.h = h;
    t.color = {0.8, 0.1, 0.1};
    t.poses = {{x, y, theta}};
    scene.tracks = {t};
    return scene;
}

}  // namespace

TEST(Renderer, OnAxisAgentCentroidMatchesProjection) {
    // Principal axis aimed so that it passes through the agent's mid-height
    // center 20 m ahead.
    const double h = 1.6;
    const double pitch = std::asin((h / 2.0 - 6.0) / 20.0);
    const auto cam = geometry::make_camera({0.0, 0.0, 6.0}, 0.0, pitch, 320, 180, M_PI / 2.0);
    const double ground_dist = 20.0 * std::cos(pitch);
    // Crosswise so the depth extent (and with it the perspective weighting
    // of the pixel centroid) stays small.
    const Scene scene = single_agent_scene(cam, ground_dist, 0.0, M_PI / 2.0);

    const RenderedFrame f = render_frame(scene, 0);
    ASSERT_EQ(f.boxes[0].size(), 1u);
    const auto& box = f.boxes[0][0];
    const auto pp =
        geometry::project_world_point(cam, {ground_dist, 0.0, h / 2.0});
    EXPECT_NEAR(box.centroid_u, pp.u, 1.0);
    EXPECT_NEAR(box.centroid_v, pp.v, 1.0);
    EXPECT_NEAR(pp.u, 160.0, 1e-6);   // by construction on the axis
    EXPECT_NEAR(pp.v, 90.0, 1e-6);
}

TEST(Renderer, RandomVisibleAgentCentroidsMatchProjection) {
    Rng rng(211);
    int tested = 0;
    for (int attempt = 0; attempt < 1500 && tested < 100; ++attempt) {
        const auto cam = testutil::random_roadside_camera(rng, 320, 180);
        const double ang = rng.uniform(0.0, 2.0 * M_PI);
        const double rad = rng.uniform(0.0, 10.0);
        const double x = rad * std::cos(ang), y = rad * std::sin(ang);
        // Compact cube probes: for extended bodies the visible-pixel centroid
        // is biased toward the near side (quadratic in size/distance), so the
        // 1 px agreement bound is only meaningful for small agents.
        const Scene scene =
            single_agent_scene(cam, x, y, rng.uniform(0.0, 2.0 * M_PI), 0.9, 0.9, 0.9);
        const auto st = render_static(scene, 0);
        const auto [img, boxes] = render_agents_over(scene, 0, 0, st);
        if (boxes.empty() || boxes[0].pixel_count < 9) continue;
        // Skip silhouettes clipped by the image border; their visible-pixel
        // centroid is not the full-body centroid.
        const auto& b = boxes[0];
        if (b.x_min <= 0 || b.y_min <= 0 || b.x_max >= img.width - 1 ||
            b.y_max >= img.height - 1)
            continue;
        const auto pp = geometry::project_world_point(
            cam, {x, y, scene.tracks[0].h / 2.0});
        EXPECT_NEAR(b.centroid_u, pp.u, 1.0) << "agent at " << x << "," << y;
        EXPECT_NEAR(b.centroid_v, pp.v, 1.0) << "agent at " << x << "," << y;
        ++tested;
    }
    EXPECT_EQ(tested, 100);
}

TEST(Renderer, AgentBehindCameraAbsent) {
    const auto cam = geometry::make_camera({0.0, 0.0, 6.0}, 0.0, -15.0 * M_PI / 180.0, 320,
                                           180, M_PI / 2.0);
    const Scene scene = single_agent_scene(cam, -15.0, 0.0, 0.0);
    const RenderedFrame f = render_frame(scene, 0);
    EXPECT_TRUE(f.boxes[0].empty());
    EXPECT_EQ(f.images[0], f.backgrounds[0]);
}

TEST(Renderer, OccludedAgentHiddenByNearerAgent) {
    const auto cam = geometry::make_camera({0.0, 0.0, 6.0}, 0.0, -15.0 * M_PI / 180.0, 320,
                                           180, M_PI / 2.0);
    // A tall wide box directly in front of a distant one on the same ray.
    Scene scene = single_agent_scene(cam, 14.0, 0.0, 0.0, 4.4, 1.9, 1.2);
    AgentTrack blocker;
    blocker.agent_id = 1;
    blocker.cls = rasterizer::AgentClass::vehicle;
    blocker.l = 2.0;
    blocker.w = 6.0;
    blocker.h = 4.0;
    blocker.color = {0.2, 0.2, 0.9};
    blocker.poses = {{9.0, 0.0, 0.0}};
    scene.tracks.push_back(blocker);

    const RenderedFrame f = render_frame(scene, 0);
    ASSERT_EQ(f.boxes[0].size(), 1u);
    EXPECT_EQ(f.boxes[0][0].agent_id, 1);   // only the blocker is visible
}

TEST(DatasetExport, LayoutAndCountsMatchContract) {
    testutil::TempDir tmp("export");
    std::vector<Scene> scenes;
    for (int i = 0; i < 2; ++i) {
        auto spec = small_spec(40 + i, "scene" + std::to_string(i));
        spec.num_frames = 10;
        scenes.push_back(generate_scene(spec));
    }
    const auto manifest = export_dataset(scenes, tmp.path());
    ASSERT_EQ(manifest.scenes.size(), 2u);

    size_t frame_images = 0, background_images = 0;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(tmp.path())) {
        const auto name = entry.path().filename().string();
        if (name.rfind("frame", 0) == 0) ++frame_images;
        if (name == "background.png") ++background_images;
    }
    EXPECT_EQ(frame_images, 2u * 10u * 4u);
    EXPECT_EQ(background_images, 2u * 4u);
    EXPECT_TRUE(std::filesystem::exists(tmp.path() / "manifest.json"));
    EXPECT_TRUE(std::filesystem::exists(tmp.path() / "scene0" / "calibration.json"));
    EXPECT_TRUE(std::filesystem::exists(tmp.path() / "scene0" / "annotations.jsonl"));

    // Round-trip through the loader.
    const auto ds = io::load_dataset(tmp.path());
    ASSERT_EQ(ds.scenes.size(), 2u);
    EXPECT_EQ(ds.scenes[0].scene_id, "scene0");
    EXPECT_EQ(ds.scenes[0].cameras.size(), 4u);
    EXPECT_EQ(ds.scenes[0].frame_ids.size(), 10u);
    for (size_t k = 0; k < 4; ++k) {
        EXPECT_EQ((ds.scenes[0].cameras[k].K - scenes[0].cameras[k].K).norm(), 0.0);
        EXPECT_EQ((ds.scenes[0].cameras[k].R - scenes[0].cameras[k].R).norm(), 0.0);
        EXPECT_EQ((ds.scenes[0].cameras[k].t - scenes[0].cameras[k].t).norm(), 0.0);
    }
    const auto ann0 = annotations_for_frame(scenes[0], 3);
    ASSERT_EQ(ds.scenes[0].annotations[3].size(), ann0.size());
    for (size_t i = 0; i < ann0.size(); ++i) {
        EXPECT_EQ(ds.scenes[0].annotations[3][i].agent_id, ann0[i].agent_id);
        EXPECT_EQ(ds.scenes[0].annotations[3][i].x, ann0[i].x);
        EXPECT_EQ(ds.scenes[0].annotations[3][i].theta, ann0[i].theta);
    }

    // Loaded image matches the in-memory render.
    const auto img = read_png(ds.scenes[0].frame_path(1, 3).string());
    const auto st = render_static(scenes[0], 1);
    const auto [expect, _] = render_agents_over(scenes[0], 3, 1, st);
    EXPECT_EQ(img, expect);
}

TEST(DatasetExport, ReExportIsByteIdentical) {
    testutil::TempDir tmp("idem");
    auto spec = small_spec(55, "only");
    spec.num_frames = 3;
    const std::vector<Scene> scenes{generate_scene(spec)};
    export_dataset(scenes, tmp.path());
    const auto manifest1 = read_bytes(tmp.path() / "manifest.json");
    const auto frame1 = read_bytes(tmp.path() / "only" / "cam2" / "frame0002.png");
    const auto calib1 = read_bytes(tmp.path() / "only" / "calibration.json");
    export_dataset(scenes, tmp.path());
    EXPECT_EQ(read_bytes(tmp.path() / "manifest.json"), manifest1);
    EXPECT_EQ(read_bytes(tmp.path() / "only" / "cam2" / "frame0002.png"), frame1);
    EXPECT_EQ(read_bytes(tmp.path() / "only" / "calibration.json"), calib1);
}

TEST(DatasetExport, ImageTensorConversion) {
    Image8 img(4, 2, 3);
    img.at(0, 0)[0] = 255;
    img.at(3, 1)[2] = 51;
    const TensorF t = io::image_to_input_tensor(img);
    ASSERT_EQ(t.shape(), (std::vector<int>{3, 2, 4}));
    EXPECT_FLOAT_EQ(t(0, 0, 0), 0.5f);
    EXPECT_FLOAT_EQ(t(1, 0, 0), -0.5f);
    EXPECT_FLOAT_EQ(t(2, 1, 3), 51.0f / 255.0f - 0.5f);
}
