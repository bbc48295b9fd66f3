#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace wsdsr {

/// A single-channel real-valued image, nominal range [0,255], row-major.
/// All pixel operators in the library act on this type.
struct Plane {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    Plane() = default;
    Plane(int w, int h, double fill = 0.0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

    double& at(int row, int col) { return data[static_cast<std::size_t>(row) * width + col]; }
    double at(int row, int col) const { return data[static_cast<std::size_t>(row) * width + col]; }

    const double* row(int r) const { return data.data() + static_cast<std::size_t>(r) * width; }
    double* row(int r) { return data.data() + static_cast<std::size_t>(r) * width; }

    std::size_t size() const { return data.size(); }
    bool same_dims(const Plane& o) const { return width == o.width && height == o.height; }
};

enum class ColorSpace { Gray, Rgb, YCbCr };

/// An ordered list of equally sized planes with a colorspace tag.
/// 1 plane iff Gray, 3 planes iff Rgb or YCbCr.
struct MultiPlane {
    ColorSpace colorspace = ColorSpace::Gray;
    std::vector<Plane> planes;

    bool is_color() const { return colorspace != ColorSpace::Gray; }
    int width() const { return planes.empty() ? 0 : planes[0].width; }
    int height() const { return planes.empty() ? 0 : planes[0].height; }
};

/// Sentinel returned by psnr() when the two planes are identical (MSE = 0).
inline constexpr double kPsnrInfinite = std::numeric_limits<double>::infinity();

/// Clamp to [0,255] and round half away from zero. Idempotent.
Plane quantize8(const Plane& p);

/// Keep the largest top-left sub-rectangle whose sides divide evenly by the
/// scale. For non-integer scales with no exact multiple the plane is returned
/// unchanged and the resampler rounds instead.
Plane trim_to_multiple(const Plane& p, double scale);

/// Central (width-2b) x (height-2b) rectangle.
Plane trim_border(const Plane& p, int border);

/// 10*log10(255^2 / MSE); kPsnrInfinite when the planes are identical.
double psnr(const Plane& a, const Plane& b);

}  // namespace wsdsr
