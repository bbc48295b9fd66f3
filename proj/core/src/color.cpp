#include "wsdsr/color.hpp"

#include <array>
#include <cmath>

#include "wsdsr/errors.hpp"

namespace wsdsr {

namespace {

// Forward matrix, applied as ycc = M * rgb + offset.
constexpr double kFwd[3][3] = {
    {65.481 / 255.0, 128.553 / 255.0, 24.966 / 255.0},
    {-37.797 / 255.0, -74.203 / 255.0, 112.0 / 255.0},
    {112.0 / 255.0, -93.786 / 255.0, -18.214 / 255.0},
};
constexpr double kOffset[3] = {16.0, 128.0, 128.0};

std::array<std::array<double, 3>, 3> invert3(const double m[3][3]) {
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    std::array<std::array<double, 3>, 3> inv;
    inv[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
    inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
    inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
    inv[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
    inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
    inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
    inv[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
    inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
    inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
    return inv;
}

const std::array<std::array<double, 3>, 3>& inverse_matrix() {
    static const auto inv = invert3(kFwd);
    return inv;
}

void check_three_planes(const MultiPlane& img, ColorSpace expected, const char* who) {
    if (img.colorspace != expected) throw InvalidInput(std::string(who) + ": wrong colorspace tag");
    if (img.planes.size() != 3) throw InvalidInput(std::string(who) + ": expected 3 planes");
    if (!img.planes[0].same_dims(img.planes[1]) || !img.planes[0].same_dims(img.planes[2]))
        throw InvalidInput(std::string(who) + ": plane dimensions differ");
}

}  // namespace

double rgb_luma(double r, double g, double b) {
    return kFwd[0][0] * r + kFwd[0][1] * g + kFwd[0][2] * b + kOffset[0];
}

Plane rgb_luma_plane(const MultiPlane& img) {
    check_three_planes(img, ColorSpace::Rgb, "rgb_luma_plane");
    const Plane& r = img.planes[0];
    const Plane& g = img.planes[1];
    const Plane& b = img.planes[2];
    Plane y(r.width, r.height);
    for (std::size_t i = 0; i < y.data.size(); ++i)
        y.data[i] = rgb_luma(r.data[i], g.data[i], b.data[i]);
    return y;
}

MultiPlane rgb_to_ycbcr(const MultiPlane& img) {
    check_three_planes(img, ColorSpace::Rgb, "rgb_to_ycbcr");
    MultiPlane out;
    out.colorspace = ColorSpace::YCbCr;
    out.planes.assign(3, Plane(img.width(), img.height()));
    const Plane& r = img.planes[0];
    const Plane& g = img.planes[1];
    const Plane& b = img.planes[2];
    for (std::size_t i = 0; i < r.data.size(); ++i) {
        for (int ch = 0; ch < 3; ++ch) {
            out.planes[ch].data[i] = kFwd[ch][0] * r.data[i] + kFwd[ch][1] * g.data[i] +
                                     kFwd[ch][2] * b.data[i] + kOffset[ch];
        }
    }
    return out;
}

MultiPlane ycbcr_to_rgb(const MultiPlane& img) {
    check_three_planes(img, ColorSpace::YCbCr, "ycbcr_to_rgb");
    const auto& inv = inverse_matrix();
    MultiPlane out;
    out.colorspace = ColorSpace::Rgb;
    out.planes.assign(3, Plane(img.width(), img.height()));
    const Plane& y = img.planes[0];
    const Plane& cb = img.planes[1];
    const Plane& cr = img.planes[2];
    for (std::size_t i = 0; i < y.data.size(); ++i) {
        const double v0 = y.data[i] - kOffset[0];
        const double v1 = cb.data[i] - kOffset[1];
        const double v2 = cr.data[i] - kOffset[2];
        for (int ch = 0; ch < 3; ++ch) {
            double v = inv[ch][0] * v0 + inv[ch][1] * v1 + inv[ch][2] * v2;
            if (v < 0.0) v = 0.0;
            if (v > 255.0) v = 255.0;
            out.planes[ch].data[i] = v;
        }
    }
    return out;
}

}  // namespace wsdsr
