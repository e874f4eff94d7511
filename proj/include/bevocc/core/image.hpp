#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace bevocc {

/// Interleaved 8-bit image, origin top-left. channels is 1 (gray) or 3 (RGB).
struct Image8 {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<std::uint8_t> pixels;

    Image8() = default;

    Image8(int w, int h, int c) : width(w), height(h), channels(c) {
        if (w <= 0 || h <= 0 || (c != 1 && c != 3))
            throw std::invalid_argument("Image8: bad dimensions");
        pixels.assign(static_cast<size_t>(w) * h * c, 0);
    }

    std::uint8_t* at(int x, int y) {
        return pixels.data() + (static_cast<size_t>(y) * width + x) * channels;
    }
    const std::uint8_t* at(int x, int y) const {
        return pixels.data() + (static_cast<size_t>(y) * width + x) * channels;
    }

    void fill(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x) {
                auto* p = at(x, y);
                p[0] = r;
                if (channels == 3) {
                    p[1] = g;
                    p[2] = b;
                }
            }
    }

    bool operator==(const Image8& other) const {
        return width == other.width && height == other.height &&
               channels == other.channels && pixels == other.pixels;
    }
};

inline std::uint8_t clamp_u8(double v) {
    return static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
}

}  // namespace bevocc
