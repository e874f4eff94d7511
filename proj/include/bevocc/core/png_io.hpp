#pragma once

#include <png.h>

#include <cstring>
#include <stdexcept>
#include <string>

#include "bevocc/core/image.hpp"

namespace bevocc {

// libpng simplified API. Writes are deterministic for identical pixel input,
// which the dataset determinism contract relies on.

inline void write_png(const std::string& path, const Image8& img) {
    png_image pi;
    std::memset(&pi, 0, sizeof(pi));
    pi.version = PNG_IMAGE_VERSION;
    pi.width = static_cast<png_uint_32>(img.width);
    pi.height = static_cast<png_uint_32>(img.height);
    pi.format = img.channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    if (!png_image_write_to_file(&pi, path.c_str(), 0, img.pixels.data(),
                                 static_cast<png_int_32>(img.width * img.channels), nullptr)) {
        const std::string msg = pi.message;
        png_image_free(&pi);
        throw std::runtime_error("write_png: " + path + ": " + msg);
    }
}

inline Image8 read_png(const std::string& path) {
    png_image pi;
    std::memset(&pi, 0, sizeof(pi));
    pi.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&pi, path.c_str())) {
        const std::string msg = pi.message;
        png_image_free(&pi);
        throw std::runtime_error("read_png: " + path + ": " + msg);
    }
    const bool gray = (pi.format & PNG_FORMAT_FLAG_COLOR) == 0;
    pi.format = gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
    Image8 img(static_cast<int>(pi.width), static_cast<int>(pi.height), gray ? 1 : 3);
    if (!png_image_finish_read(&pi, nullptr, img.pixels.data(),
                               static_cast<png_int_32>(img.width * img.channels), nullptr)) {
        const std::string msg = pi.message;
        png_image_free(&pi);
        throw std::runtime_error("read_png: " + path + ": " + msg);
    }
    return img;
}

}  // namespace bevocc
