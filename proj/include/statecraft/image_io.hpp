#pragma once

#include <csetjmp>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include <jpeglib.h>
#include <png.h>

#include "statecraft/common.hpp"
#include "statecraft/tensor.hpp"

namespace statecraft {

// Images move through the pipeline as HWC float tensors holding raw 8-bit
// values (0..255); rescaling to [0,1] is the preprocessing stage's job.

namespace detail {

struct PngErrorTrap {
    std::jmp_buf jump;
    static void handler(png_structp png, png_const_charp) {
        auto* trap = static_cast<PngErrorTrap*>(png_get_error_ptr(png));
        std::longjmp(trap->jump, 1);
    }
    static void quiet_warning(png_structp, png_const_charp) {}
};

inline Tensor<float> rows_to_tensor(const std::vector<std::uint8_t>& rgb, int h, int w) {
    Tensor<float> out({h, w, 3});
    for (std::size_t i = 0; i < rgb.size(); ++i) out.data[i] = static_cast<float>(rgb[i]);
    return out;
}

inline Tensor<float> decode_png(std::FILE* f, const std::string& path) {
    PngErrorTrap trap;
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &trap, PngErrorTrap::handler,
                                             PngErrorTrap::quiet_warning);
    if (!png) throw IoError("png: cannot allocate reader for " + path);
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("png: cannot allocate info for " + path);
    }

    std::vector<std::uint8_t> rgb;
    std::vector<png_bytep> row_ptrs;
    int h = 0;
    int w = 0;
    if (setjmp(trap.jump)) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw FormatError("png: failed to decode " + path);
    }

    png_init_io(png, f);
    png_read_info(png, info);
    w = static_cast<int>(png_get_image_width(png, info));
    h = static_cast<int>(png_get_image_height(png, info));

    png_set_expand(png);
    png_set_strip_16(png);
    png_set_strip_alpha(png);
    if (png_get_color_type(png, info) == PNG_COLOR_TYPE_GRAY ||
        png_get_color_type(png, info) == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(png);
    png_read_update_info(png, info);
    if (png_get_channels(png, info) != 3) png_error(png, "unexpected channel count");

    rgb.resize(static_cast<std::size_t>(h) * w * 3);
    row_ptrs.resize(static_cast<std::size_t>(h));
    for (int y = 0; y < h; ++y) row_ptrs[static_cast<std::size_t>(y)] = rgb.data() + static_cast<std::size_t>(y) * w * 3;
    png_read_image(png, row_ptrs.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return rows_to_tensor(rgb, h, w);
}

struct JpegErrorTrap {
    jpeg_error_mgr mgr;
    std::jmp_buf jump;
    static void handler(j_common_ptr cinfo) {
        auto* trap = reinterpret_cast<JpegErrorTrap*>(cinfo->err);
        std::longjmp(trap->jump, 1);
    }
    static void quiet(j_common_ptr, int) {}
};

inline Tensor<float> decode_jpeg(std::FILE* f, const std::string& path) {
    jpeg_decompress_struct cinfo;
    JpegErrorTrap trap;
    cinfo.err = jpeg_std_error(&trap.mgr);
    trap.mgr.error_exit = JpegErrorTrap::handler;
    trap.mgr.emit_message = JpegErrorTrap::quiet;

    std::vector<std::uint8_t> rgb;
    if (setjmp(trap.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw FormatError("jpeg: failed to decode " + path);
    }

    jpeg_create_decompress(&cinfo);
    jpeg_stdio_src(&cinfo, f);
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);

    const int w = static_cast<int>(cinfo.output_width);
    const int h = static_cast<int>(cinfo.output_height);
    rgb.resize(static_cast<std::size_t>(h) * w * 3);
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = rgb.data() + static_cast<std::size_t>(cinfo.output_scanline) * w * 3;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return rows_to_tensor(rgb, h, w);
}

}  // namespace detail

inline Tensor<float> load_image(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw IoError("image: cannot open " + path);
    unsigned char magic[4] = {0, 0, 0, 0};
    const std::size_t got = std::fread(magic, 1, 4, f);
    std::rewind(f);
    Tensor<float> out;
    try {
        if (got >= 4 && magic[0] == 0x89 && magic[1] == 'P' && magic[2] == 'N' && magic[3] == 'G')
            out = detail::decode_png(f, path);
        else if (got >= 2 && magic[0] == 0xff && magic[1] == 0xd8)
            out = detail::decode_jpeg(f, path);
        else
            throw FormatError("image: " + path + " is neither PNG nor JPEG");
    } catch (...) {
        std::fclose(f);
        throw;
    }
    std::fclose(f);
    return out;
}

// Writes an 8-bit RGB PNG; values are rounded and clamped to 0..255.
inline void save_png(const std::string& path, const Tensor<float>& img) {
    if (img.rank() != 3 || img.shape[2] != 3)
        throw ShapeError("png: expected an HWC image with 3 channels, got " + img.shape_str());
    const int h = img.shape[0];
    const int w = img.shape[1];
    std::vector<std::uint8_t> rgb(static_cast<std::size_t>(h) * w * 3);
    for (std::size_t i = 0; i < rgb.size(); ++i) {
        const float v = img.data[i];
        rgb[i] = static_cast<std::uint8_t>(v <= 0.0f ? 0 : (v >= 255.0f ? 255 : static_cast<int>(v + 0.5f)));
    }

    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
    }
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw IoError("png: cannot open " + path + " for writing");

    detail::PngErrorTrap trap;
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &trap, detail::PngErrorTrap::handler,
                                              detail::PngErrorTrap::quiet_warning);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
        std::fclose(f);
        throw IoError("png: cannot allocate writer for " + path);
    }
    std::vector<png_bytep> row_ptrs(static_cast<std::size_t>(h));
    for (int y = 0; y < h; ++y) row_ptrs[static_cast<std::size_t>(y)] = rgb.data() + static_cast<std::size_t>(y) * w * 3;

    if (setjmp(trap.jump)) {
        png_destroy_write_struct(&png, &info);
        std::fclose(f);
        throw IoError("png: failed to encode " + path);
    }
    png_init_io(png, f);
    png_set_IHDR(png, info, static_cast<png_uint_32>(w), static_cast<png_uint_32>(h), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, row_ptrs.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    std::fclose(f);
}

}  // namespace statecraft
