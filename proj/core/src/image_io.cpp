#include "wsdsr/image_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

#include "wsdsr/errors.hpp"

namespace wsdsr {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

unsigned char to_byte(double v) {
    if (v < 0.0) v = 0.0;
    if (v > 255.0) v = 255.0;
    return static_cast<unsigned char>(std::lround(v));
}

}  // namespace

MultiPlane read_png(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw InvalidInput("read_png: cannot open " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("read_png: png_create_read_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw std::runtime_error("read_png: png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw InvalidInput("read_png: failed to decode " + path);
    }
    png_init_io(png, fp.get());
    png_read_info(png, info);

    png_uint_32 width = 0, height = 0;
    int bit_depth = 0, color_type = 0;
    png_get_IHDR(png, info, &width, &height, &bit_depth, &color_type, nullptr, nullptr, nullptr);

    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    png_read_update_info(png, info);

    png_get_IHDR(png, info, &width, &height, &bit_depth, &color_type, nullptr, nullptr, nullptr);
    const int channels = png_get_channels(png, info);
    if (channels != 1 && channels != 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw InvalidInput("read_png: unsupported channel count in " + path);
    }

    std::vector<unsigned char> rowbuf(static_cast<std::size_t>(width) * channels);
    MultiPlane out;
    out.colorspace = channels == 1 ? ColorSpace::Gray : ColorSpace::Rgb;
    out.planes.assign(channels, Plane(static_cast<int>(width), static_cast<int>(height)));

    for (png_uint_32 r = 0; r < height; ++r) {
        png_read_row(png, rowbuf.data(), nullptr);
        for (png_uint_32 c = 0; c < width; ++c)
            for (int ch = 0; ch < channels; ++ch)
                out.planes[ch].at(static_cast<int>(r), static_cast<int>(c)) =
                    static_cast<double>(rowbuf[c * channels + ch]);
    }
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return out;
}

void write_png(const std::string& path, const MultiPlane& img) {
    if (img.colorspace == ColorSpace::YCbCr)
        throw InvalidInput("write_png: convert YCbCr to RGB before writing");
    const int channels = img.colorspace == ColorSpace::Gray ? 1 : 3;
    if (static_cast<int>(img.planes.size()) != channels)
        throw InvalidInput("write_png: plane count does not match colorspace");

    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw InvalidInput("write_png: cannot open " + path);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("write_png: png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw std::runtime_error("write_png: png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw std::runtime_error("write_png: failed to encode " + path);
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, img.width(), img.height(), 8,
                 channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<unsigned char> rowbuf(static_cast<std::size_t>(img.width()) * channels);
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c)
            for (int ch = 0; ch < channels; ++ch)
                rowbuf[static_cast<std::size_t>(c) * channels + ch] = to_byte(img.planes[ch].at(r, c));
        png_write_row(png, rowbuf.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

void write_png(const std::string& path, const Plane& plane) {
    MultiPlane img;
    img.colorspace = ColorSpace::Gray;
    img.planes.push_back(plane);
    write_png(path, img);
}

void write_plane_text(const std::string& path, const Plane& p) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("write_plane_text: cannot open " + path);
    out << p.width << " " << p.height << "\n";
    out.precision(17);
    for (int r = 0; r < p.height; ++r) {
        for (int c = 0; c < p.width; ++c) {
            if (c) out << " ";
            out << p.at(r, c);
        }
        out << "\n";
    }
    if (!out) throw std::runtime_error("write_plane_text: write failed for " + path);
}

Plane read_plane_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("read_plane_text: cannot open " + path);
    int w = 0, h = 0;
    if (!(in >> w >> h) || w <= 0 || h <= 0)
        throw InvalidInput("read_plane_text: bad header in " + path);
    Plane p(w, h);
    for (auto& v : p.data)
        if (!(in >> v)) throw InvalidInput("read_plane_text: truncated data in " + path);
    return p;
}

}  // namespace wsdsr
