#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "bevocc/core/image.hpp"
#include "bevocc/scenegen/scene.hpp"

namespace bevocc::scenegen {

/// Tight pixel-space box around the pixels where an agent won the depth test,
/// plus the visible-pixel centroid (pixel centers, image coordinates).
struct AgentBox2D {
    int agent_id = 0;
    int x_min = 0, y_min = 0, x_max = 0, y_max = 0;   // inclusive pixel indices
    std::int64_t pixel_count = 0;
    double centroid_u = 0.0, centroid_v = 0.0;
};

/// One synchronized multi-camera capture: per-camera renders of the scene at
/// a frame, the agent-free renders of the same scene, the planar annotations
/// and per-camera visible 2D boxes.
struct RenderedFrame {
    int frame_id = 0;
    std::vector<Image8> images;
    std::vector<Image8> backgrounds;
    std::vector<rasterizer::AgentAnnotation> annotations;
    std::vector<std::vector<AgentBox2D>> boxes;   // [camera][visible agent]
};

namespace detail {

using Color = std::array<double, 3>;

inline Color mix(const Color& a, const Color& b, double t) {
    return {a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t, a[2] + (b[2] - a[2]) * t};
}

inline void store_pixel(Image8& img, int x, int y, const Color& c) {
    std::uint8_t* p = img.at(x, y);
    for (int k = 0; k < 3; ++k) p[k] = clamp_u8(c[k] * 255.0);
}

/// Scene appearance at ground point (x, y): road arms with dashed center
/// markings over mottled grass.
inline Color ground_color(const Scene& scene, double x, double y) {
    const auto& pal = scene.palette;
    double best_perp = std::numeric_limits<double>::infinity();
    double best_along = 0.0;
    const double road_len = scene.spec.roi_radius + 60.0;
    for (double phi : scene.arm_angles) {
        const double c = std::cos(phi), s = std::sin(phi);
        const double along = x * c + y * s;
        const double perp = -x * s + y * c;
        if (along < 0.0 || along > road_len) continue;
        if (std::abs(perp) < std::abs(best_perp)) {
            best_perp = perp;
            best_along = along;
        }
    }
    // Junction core is always paved.
    const double r2 = x * x + y * y;
    const bool core = r2 <= scene.road_half_width * scene.road_half_width;

    const double mottle =
        pal.mottle_amp * std::sin(pal.mottle[0] * x + pal.mottle[1] * y + pal.mottle[2]) *
        std::sin(pal.mottle[3] * x - pal.mottle[4] * y + pal.mottle[5]);

    Color base;
    if (core || std::abs(best_perp) <= scene.road_half_width) {
        base = pal.asphalt;
        const bool dash = std::abs(best_perp) < 0.09 && best_along > 5.0 &&
                          std::fmod(best_along, 3.0) < 1.8;
        if (dash) base = pal.marking;
    } else {
        base = pal.grass;
    }
    for (auto& v : base) v += mottle;
    return base;
}

inline Color sky_color(const Scene& scene, double dz_norm) {
    const double t = std::clamp(dz_norm, 0.0, 1.0);
    return mix(scene.palette.sky_horizon, scene.palette.sky_zenith, t);
}

/// Oriented box centered at (x, y, h/2) with yaw theta.
struct Box3 {
    double x, y, theta, l, w, h;
    Color color;
};

constexpr double kNearClip = 0.05;   // m along the ray parameter
constexpr double kFog = 1.0 / 120.0; // fog density, 1/m

/// Slab-method ray/box intersection. Ray: origin + t * dir (dir need not be
/// normalized; t is compared against the shared per-pixel depth buffer).
/// On a hit, face_axis/face_sign identify the entered face for shading.
inline bool ray_box(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir, const Box3& b,
                    double t_limit, double& t_hit, int& face_axis, double& face_sign) {
    const double c = std::cos(b.theta), s = std::sin(b.theta);
    // Local frame: x along length, y across, z up, centered mid-height.
    const double ox = origin.x() - b.x, oy = origin.y() - b.y, oz = origin.z() - b.h / 2.0;
    const double lo[3] = {c * ox + s * oy, -s * ox + c * oy, oz};
    const double ld[3] = {c * dir.x() + s * dir.y(), -s * dir.x() + c * dir.y(), dir.z()};
    const double half[3] = {b.l / 2.0, b.w / 2.0, b.h / 2.0};

    double t0 = kNearClip, t1 = t_limit;
    int axis = -1;
    double sign = 0.0;
    for (int a = 0; a < 3; ++a) {
        if (std::abs(ld[a]) < 1e-12) {
            if (std::abs(lo[a]) > half[a]) return false;
            continue;
        }
        double ta = (-half[a] - lo[a]) / ld[a];
        double tb = (half[a] - lo[a]) / ld[a];
        double entry_sign = -1.0;
        if (ta > tb) {
            std::swap(ta, tb);
            entry_sign = 1.0;
        }
        if (ta > t0) {
            t0 = ta;
            axis = a;
            sign = entry_sign;
        }
        t1 = std::min(t1, tb);
        if (t0 > t1) return false;
    }
    if (axis < 0) return false;   // origin inside the box or hit behind the near clip
    t_hit = t0;
    face_axis = axis;
    face_sign = sign;
    return true;
}

inline Color shade_box(const Box3& b, int face_axis, double face_sign) {
    const double c = std::cos(b.theta), s = std::sin(b.theta);
    Eigen::Vector3d n;
    if (face_axis == 0)
        n = face_sign * Eigen::Vector3d(c, s, 0.0);
    else if (face_axis == 1)
        n = face_sign * Eigen::Vector3d(-s, c, 0.0);
    else
        n = face_sign * Eigen::Vector3d(0.0, 0.0, 1.0);
    static const Eigen::Vector3d kLight = Eigen::Vector3d(0.35, 0.25, 0.9).normalized();
    const double lum = 0.45 + 0.55 * std::max(0.0, n.dot(kLight));
    return {b.color[0] * lum, b.color[1] * lum, b.color[2] * lum};
}

struct RayGrid {
    Eigen::Vector3d origin;
    std::vector<Eigen::Vector3d> dirs;   // world-frame, one per pixel, row-major
    int width = 0, height = 0;
};

inline RayGrid make_ray_grid(const geometry::CameraCalibration& cam) {
    RayGrid g;
    g.origin = cam.center();
    g.width = cam.image_width;
    g.height = cam.image_height;
    g.dirs.reserve(static_cast<size_t>(g.width) * g.height);
    const Eigen::Matrix3d Kinv = cam.K.inverse();
    const Eigen::Matrix3d Rt = cam.R.transpose();
    for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < g.width; ++x)
            g.dirs.push_back(Rt * (Kinv * Eigen::Vector3d(x + 0.5, y + 0.5, 1.0)));
    return g;
}

inline void fog_mix(Color& c, const Scene& scene, double dist) {
    const double f = 1.0 - std::exp(-dist * kFog);
    c = mix(c, scene.palette.sky_horizon, f);
}

}  // namespace detail

/// Agent-free render of one camera: ground, sky and parked clutter, plus the
/// per-pixel depth (ray parameter; +inf for sky) used to occlude agents.
struct StaticRender {
    Image8 image;
    std::vector<double> depth;
};

inline StaticRender render_static(const Scene& scene, int camera_index) {
    const auto& cam = scene.cameras.at(static_cast<size_t>(camera_index));
    const auto rays = detail::make_ray_grid(cam);
    StaticRender out;
    out.image = Image8(cam.image_width, cam.image_height, 3);
    out.depth.assign(rays.dirs.size(), std::numeric_limits<double>::infinity());

    std::vector<detail::Box3> blocks;
    blocks.reserve(scene.clutter.size());
    for (const auto& b : scene.clutter)
        blocks.push_back({b.x, b.y, b.theta, b.l, b.w, b.h, b.color});

    size_t idx = 0;
    for (int y = 0; y < rays.height; ++y) {
        for (int x = 0; x < rays.width; ++x, ++idx) {
            const Eigen::Vector3d& d = rays.dirs[idx];
            double t_ground = std::numeric_limits<double>::infinity();
            if (d.z() < -1e-12) t_ground = -rays.origin.z() / d.z();

            detail::Color c;
            double t_hit = t_ground;
            if (std::isfinite(t_ground) && t_ground > detail::kNearClip) {
                const Eigen::Vector3d p = rays.origin + t_ground * d;
                c = detail::ground_color(scene, p.x(), p.y());
            } else {
                const double dzn = d.z() / d.norm();
                c = detail::sky_color(scene, dzn * 2.0);
                t_hit = std::numeric_limits<double>::infinity();
            }

            for (const auto& b : blocks) {
                double t;
                int axis;
                double sign;
                if (detail::ray_box(rays.origin, d, b, t_hit, t, axis, sign)) {
                    t_hit = t;
                    c = detail::shade_box(b, axis, sign);
                }
            }
            if (std::isfinite(t_hit)) detail::fog_mix(c, scene, t_hit * d.norm());
            out.depth[idx] = t_hit;
            detail::store_pixel(out.image, x, y, c);
        }
    }
    return out;
}

/// Draws the frame's agents over a static render (copy-on-write) with
/// depth-correct occlusion and collects visible 2D boxes.
inline std::pair<Image8, std::vector<AgentBox2D>> render_agents_over(
    const Scene& scene, int frame_id, int camera_index, const StaticRender& statics) {
    if (frame_id < 0 || frame_id >= scene.spec.num_frames)
        throw std::invalid_argument("render_agents_over: frame_id out of range");
    const auto& cam = scene.cameras.at(static_cast<size_t>(camera_index));
    const auto rays = detail::make_ray_grid(cam);

    Image8 img = statics.image;
    std::vector<double> depth = statics.depth;
    // Owner of each pixel after depth resolution; boxes are derived from the
    // final owner map so that later-drawn nearer agents steal pixels
    // correctly.
    std::vector<int> owner(depth.size(), -1);

    for (size_t track_idx = 0; track_idx < scene.tracks.size(); ++track_idx) {
        const auto& track = scene.tracks[track_idx];
        const Pose& pose = track.poses[static_cast<size_t>(frame_id)];
        const detail::Box3 b{pose.x, pose.y, pose.theta, track.l, track.w, track.h, track.color};

        // Pixel bounds from the projected box corners; fall back to the full
        // image when a corner is too close to / behind the camera plane.
        int px0 = 0, px1 = cam.image_width - 1, py0 = 0, py1 = cam.image_height - 1;
        {
            double u0 = 1e30, u1 = -1e30, v0 = 1e30, v1 = -1e30;
            bool ok = true;
            const double c = std::cos(b.theta), s = std::sin(b.theta);
            for (int corner = 0; corner < 8 && ok; ++corner) {
                const double sx = (corner & 1) ? 0.5 : -0.5;
                const double sy = (corner & 2) ? 0.5 : -0.5;
                const double sz = (corner & 4) ? 1.0 : 0.0;
                const Eigen::Vector3d pw(b.x + c * sx * b.l - s * sy * b.w,
                                         b.y + s * sx * b.l + c * sy * b.w, sz * b.h);
                const auto pp = geometry::project_world_point(cam, pw);
                if (pp.depth < 0.2) {
                    ok = false;
                    break;
                }
                u0 = std::min(u0, pp.u);
                u1 = std::max(u1, pp.u);
                v0 = std::min(v0, pp.v);
                v1 = std::max(v1, pp.v);
            }
            if (ok) {
                px0 = std::max(0, static_cast<int>(std::floor(u0)) - 1);
                px1 = std::min(cam.image_width - 1, static_cast<int>(std::ceil(u1)) + 1);
                py0 = std::max(0, static_cast<int>(std::floor(v0)) - 1);
                py1 = std::min(cam.image_height - 1, static_cast<int>(std::ceil(v1)) + 1);
                if (px0 > px1 || py0 > py1) continue;   // fully outside the frame
                const double behind =
                    (cam.R * Eigen::Vector3d(b.x, b.y, b.h / 2.0) + cam.t).z();
                if (behind < 0.0) continue;
            }
        }

        for (int y = py0; y <= py1; ++y) {
            for (int x = px0; x <= px1; ++x) {
                const size_t idx = static_cast<size_t>(y) * cam.image_width + x;
                double t;
                int axis;
                double sign;
                if (!detail::ray_box(rays.origin, rays.dirs[idx], b, depth[idx], t, axis, sign))
                    continue;
                depth[idx] = t;
                owner[idx] = static_cast<int>(track_idx);
                detail::Color col = detail::shade_box(b, axis, sign);
                detail::fog_mix(col, scene, t * rays.dirs[idx].norm());
                detail::store_pixel(img, x, y, col);
            }
        }
    }

    std::vector<AgentBox2D> stats(scene.tracks.size());
    for (size_t k = 0; k < stats.size(); ++k) {
        stats[k].agent_id = scene.tracks[k].agent_id;
        stats[k].x_min = cam.image_width;
        stats[k].y_min = cam.image_height;
        stats[k].x_max = -1;
        stats[k].y_max = -1;
    }
    std::vector<double> sum_u(scene.tracks.size(), 0.0), sum_v(scene.tracks.size(), 0.0);
    size_t idx = 0;
    for (int y = 0; y < cam.image_height; ++y) {
        for (int x = 0; x < cam.image_width; ++x, ++idx) {
            const int o = owner[idx];
            if (o < 0) continue;
            auto& s = stats[static_cast<size_t>(o)];
            s.x_min = std::min(s.x_min, x);
            s.x_max = std::max(s.x_max, x);
            s.y_min = std::min(s.y_min, y);
            s.y_max = std::max(s.y_max, y);
            ++s.pixel_count;
            sum_u[static_cast<size_t>(o)] += x + 0.5;
            sum_v[static_cast<size_t>(o)] += y + 0.5;
        }
    }
    std::vector<AgentBox2D> boxes;
    for (size_t k = 0; k < stats.size(); ++k) {
        if (stats[k].pixel_count == 0) continue;
        stats[k].centroid_u = sum_u[k] / static_cast<double>(stats[k].pixel_count);
        stats[k].centroid_v = sum_v[k] / static_cast<double>(stats[k].pixel_count);
        boxes.push_back(stats[k]);
    }
    return {std::move(img), std::move(boxes)};
}

/// Full synchronized capture of one frame across all cameras. Recomputes the
/// static pass per camera; batch exporters should render statics once and
/// use render_agents_over directly.
inline RenderedFrame render_frame(const Scene& scene, int frame_id) {
    RenderedFrame out;
    out.frame_id = frame_id;
    out.annotations = annotations_for_frame(scene, frame_id);
    for (size_t k = 0; k < scene.cameras.size(); ++k) {
        StaticRender st = render_static(scene, static_cast<int>(k));
        auto [img, boxes] = render_agents_over(scene, frame_id, static_cast<int>(k), st);
        out.backgrounds.push_back(std::move(st.image));
        out.images.push_back(std::move(img));
        out.boxes.push_back(std::move(boxes));
    }
    return out;
}

}  // namespace bevocc::scenegen
