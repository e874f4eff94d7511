#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bevocc/core/tensor.hpp"
#include "bevocc/geometry/calibration.hpp"
#include "bevocc/geometry/coverage.hpp"
#include "bevocc/geometry/grid.hpp"
#include "bevocc/geometry/homography.hpp"
#include "bevocc/nn/bilinear.hpp"

namespace bevocc::geometry {

inline int feature_extent(int image_extent, int stride) {
    return (image_extent + stride - 1) / stride;  // two stride-2 stages each round up
}

/// Precomputed sampling plan for one (camera, grid, stride) triple: for every
/// BEV cell the feature-map coordinates of its ground point, plus the
/// coverage flag. Inverse warping: each covered cell pulls one bilinear
/// sample, which is mask-exact and differentiable in the feature values.
struct BevSampleContext {
    int grid_h = 0;
    int grid_w = 0;
    int feat_h = 0;
    int feat_w = 0;
    std::vector<double> u;             // feature-space x per cell, index units
    std::vector<double> v;             // feature-space y per cell, index units
    std::vector<std::uint8_t> mask;    // coverage per cell
};

inline BevSampleContext make_bev_sample_context(const CameraCalibration& calib,
                                                const BevGridSpec& spec, int feature_stride,
                                                double max_range) {
    spec.validate();
    calib.validate();
    if (feature_stride < 1) throw std::invalid_argument("make_bev_sample_context: bad stride");
    BevSampleContext ctx;
    ctx.grid_h = spec.height;
    ctx.grid_w = spec.width;
    ctx.feat_h = feature_extent(calib.image_height, feature_stride);
    ctx.feat_w = feature_extent(calib.image_width, feature_stride);
    const size_t n = static_cast<size_t>(spec.height) * spec.width;
    ctx.u.assign(n, 0.0);
    ctx.v.assign(n, 0.0);
    ctx.mask.assign(n, 0);

    const Eigen::Matrix3d H = ground_homography(calib);
    const Eigen::Vector3d cam = calib.center();
    const double s = static_cast<double>(feature_stride);
    for (int i = 0; i < spec.height; ++i) {
        for (int j = 0; j < spec.width; ++j) {
            const size_t k = static_cast<size_t>(i) * spec.width + j;
            const auto [x, y] = cell_center_world(i, j, spec);
            const PixelProjection p = apply_ground_homography(H, x, y);
            if (!p.inside_image(calib.image_width, calib.image_height)) continue;
            const double ddx = x - cam.x();
            const double ddy = y - cam.y();
            if (ddx * ddx + ddy * ddy > max_range * max_range) continue;
            // Image pixel centers sit at half-integers; feature texel i covers
            // image span [i*s, (i+1)*s), so index-space coords are u/s - 0.5.
            ctx.u[k] = p.u / s - 0.5;
            ctx.v[k] = p.v / s - 0.5;
            ctx.mask[k] = 1;
        }
    }
    return ctx;
}

/// Samples a (C, h, w) feature map into a (C, G_h, G_w) BEV grid. Cells
/// outside the camera's coverage receive zeros.
template <typename T>
Tensor<T> sample_features_to_bev(const Tensor<T>& features, const BevSampleContext& ctx) {
    if (features.rank() != 3)
        throw std::invalid_argument("sample_features_to_bev: expected (C, h, w) features");
    if (features.dim(1) != ctx.feat_h || features.dim(2) != ctx.feat_w)
        throw std::invalid_argument(
            "sample_features_to_bev: feature size " + features.shape_str() +
            " does not match stride-derived size (" + std::to_string(ctx.feat_h) + ", " +
            std::to_string(ctx.feat_w) + ")");
    const int C = features.dim(0);
    Tensor<T> out({C, ctx.grid_h, ctx.grid_w});
    const size_t plane = static_cast<size_t>(ctx.feat_h) * ctx.feat_w;
    const size_t cells = static_cast<size_t>(ctx.grid_h) * ctx.grid_w;
    for (size_t k = 0; k < cells; ++k) {
        if (!ctx.mask[k]) continue;
        const auto taps = nn::bilinear_taps(static_cast<T>(ctx.u[k]), static_cast<T>(ctx.v[k]),
                                            ctx.feat_w, ctx.feat_h);
        for (int c = 0; c < C; ++c) {
            out[static_cast<std::int64_t>(c) * cells + k] =
                nn::bilinear_sample(features.data() + c * plane, ctx.feat_w, taps);
        }
    }
    return out;
}

/// Accumulates d(loss)/d(features) given d(loss)/d(BEV grid).
template <typename T>
void sample_features_to_bev_backward(const Tensor<T>& grad_bev, const BevSampleContext& ctx,
                                     Tensor<T>& grad_features) {
    const int C = grad_features.dim(0);
    const size_t plane = static_cast<size_t>(ctx.feat_h) * ctx.feat_w;
    const size_t cells = static_cast<size_t>(ctx.grid_h) * ctx.grid_w;
    for (size_t k = 0; k < cells; ++k) {
        if (!ctx.mask[k]) continue;
        const auto taps = nn::bilinear_taps(static_cast<T>(ctx.u[k]), static_cast<T>(ctx.v[k]),
                                            ctx.feat_w, ctx.feat_h);
        for (int c = 0; c < C; ++c) {
            nn::bilinear_scatter(grad_features.data() + c * plane, ctx.feat_w, taps,
                                 grad_bev[static_cast<std::int64_t>(c) * cells + k]);
        }
    }
}

}  // namespace bevocc::geometry
