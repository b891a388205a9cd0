#include <png.h>

#include <cstdio>
#include <memory>

#include "molscope/depict/image.hpp"

namespace molscope::depict {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

void write_png(const fs::path& path, const Image& image) {
    fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        FilePtr fp(std::fopen(tmp.c_str(), "wb"));
        if (!fp) throw DataError("cannot open for write: " + tmp.string());

        png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
        png_infop info = png_create_info_struct(png);
        if (setjmp(png_jmpbuf(png))) {
            png_destroy_write_struct(&png, &info);
            throw DataError("PNG encode failed: " + path.string());
        }
        png_init_io(png, fp.get());
        // Pinned settings keep re-renders byte-identical.
        png_set_compression_level(png, 6);
        png_set_filter(png, 0, PNG_FILTER_NONE);
        png_set_IHDR(png, info, image.width, image.height, 8, PNG_COLOR_TYPE_RGB,
                     PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
        png_write_info(png, info);
        for (int y = 0; y < image.height; ++y) {
            png_write_row(png, const_cast<png_bytep>(&image.pixels[static_cast<std::size_t>(y) *
                                                                   image.width * 3]));
        }
        png_write_end(png, nullptr);
        png_destroy_write_struct(&png, &info);
    }
    fs::rename(tmp, path);
}

Image read_png(const fs::path& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw DataError("cannot open PNG: " + path.string());

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DataError("PNG decode failed: " + path.string());
    }
    png_init_io(png, fp.get());
    png_read_info(png, info);

    png_set_expand(png);
    png_set_strip_16(png);
    png_set_strip_alpha(png);
    png_set_gray_to_rgb(png);
    png_read_update_info(png, info);

    Image out(static_cast<int>(png_get_image_width(png, info)),
              static_cast<int>(png_get_image_height(png, info)));
    if (png_get_rowbytes(png, info) != static_cast<std::size_t>(out.width) * 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DataError("unexpected PNG row layout: " + path.string());
    }
    for (int y = 0; y < out.height; ++y) {
        png_read_row(png, &out.pixels[static_cast<std::size_t>(y) * out.width * 3], nullptr);
    }
    png_destroy_read_struct(&png, &info, nullptr);
    return out;
}

}  // namespace molscope::depict
