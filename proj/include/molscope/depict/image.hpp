#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "molscope/common.hpp"

namespace molscope::depict {

// 8-bit RGB raster, row-major, interleaved channels.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    Image() = default;
    Image(int w, int h, std::uint8_t fill = 255)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3, fill) {}

    std::uint8_t& at(int x, int y, int c) {
        return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
    std::uint8_t at(int x, int y, int c) const {
        return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
    bool all_constant() const {
        for (std::size_t i = 1; i < pixels.size(); ++i) {
            if (pixels[i] != pixels[0]) return false;
        }
        return true;
    }
};

struct CompoundImage {
    std::string compound_id;
    std::string render_params_hash;
    Image image;
};

void write_png(const fs::path& path, const Image& image);
Image read_png(const fs::path& path);

}  // namespace molscope::depict
