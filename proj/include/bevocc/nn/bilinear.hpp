#pragma once

#include <algorithm>
#include <cmath>

namespace bevocc::nn {

// Bilinear sampling on a single-channel plane in index coordinates (sample
// point x lands on texel i when x == i), clamp-to-edge addressing. The
// lerp form keeps constant fields exactly constant under interpolation.

template <typename T>
struct BilinearTaps {
    int x0, x1, y0, y1;
    T wx, wy;
};

template <typename T>
inline BilinearTaps<T> bilinear_taps(T x, T y, int w, int h) {
    x = std::clamp(x, T(0), T(w - 1));
    y = std::clamp(y, T(0), T(h - 1));
    BilinearTaps<T> t;
    t.x0 = static_cast<int>(std::floor(x));
    t.y0 = static_cast<int>(std::floor(y));
    if (t.x0 > w - 2) t.x0 = std::max(0, w - 2);
    if (t.y0 > h - 2) t.y0 = std::max(0, h - 2);
    t.x1 = std::min(t.x0 + 1, w - 1);
    t.y1 = std::min(t.y0 + 1, h - 1);
    t.wx = x - static_cast<T>(t.x0);
    t.wy = y - static_cast<T>(t.y0);
    return t;
}

template <typename T>
inline T bilinear_sample(const T* plane, int w, const BilinearTaps<T>& t) {
    const T f00 = plane[t.y0 * w + t.x0];
    const T f01 = plane[t.y0 * w + t.x1];
    const T f10 = plane[t.y1 * w + t.x0];
    const T f11 = plane[t.y1 * w + t.x1];
    const T v0 = f00 + t.wx * (f01 - f00);
    const T v1 = f10 + t.wx * (f11 - f10);
    return v0 + t.wy * (v1 - v0);
}

template <typename T>
inline void bilinear_scatter(T* grad_plane, int w, const BilinearTaps<T>& t, T g) {
    const T a = (T(1) - t.wx) * (T(1) - t.wy);
    const T b = t.wx * (T(1) - t.wy);
    const T c = (T(1) - t.wx) * t.wy;
    const T d = t.wx * t.wy;
    grad_plane[t.y0 * w + t.x0] += a * g;
    grad_plane[t.y0 * w + t.x1] += b * g;
    grad_plane[t.y1 * w + t.x0] += c * g;
    grad_plane[t.y1 * w + t.x1] += d * g;
}

/// d(sample)/d(x, y) in index units. Zero where the sample point clamped to
/// the border (the sampled value is constant there).
template <typename T>
inline void bilinear_pos_grad(const T* plane, int w, int h, T x, T y,
                              const BilinearTaps<T>& t, T& dvdx, T& dvdy) {
    const T f00 = plane[t.y0 * w + t.x0];
    const T f01 = plane[t.y0 * w + t.x1];
    const T f10 = plane[t.y1 * w + t.x0];
    const T f11 = plane[t.y1 * w + t.x1];
    const bool cx = x <= T(0) || x >= T(w - 1);
    const bool cy = y <= T(0) || y >= T(h - 1);
    dvdx = cx ? T(0) : (T(1) - t.wy) * (f01 - f00) + t.wy * (f11 - f10);
    dvdy = cy ? T(0) : (T(1) - t.wx) * (f10 - f00) + t.wx * (f11 - f01);
}

}  // namespace bevocc::nn
