#include "wsdsr/image.hpp"

#include <cmath>

#include "wsdsr/errors.hpp"

namespace wsdsr {

Plane quantize8(const Plane& p) {
    Plane out(p.width, p.height);
    for (std::size_t i = 0; i < p.data.size(); ++i) {
        double v = p.data[i];
        if (v < 0.0) v = 0.0;
        if (v > 255.0) v = 255.0;
        out.data[i] = std::round(v);  // half away from zero
    }
    return out;
}

namespace {

// Largest d <= n such that d/scale is an integer, or 0 if none exists.
int largest_exact_multiple(int n, double scale) {
    for (int d = n; d >= 1; --d) {
        double q = d / scale;
        if (std::abs(q - std::round(q)) < 1e-9) return d;
    }
    return 0;
}

}  // namespace

Plane trim_to_multiple(const Plane& p, double scale) {
    if (!(scale >= 1.0)) throw InvalidInput("trim_to_multiple: scale must be >= 1");
    int w = largest_exact_multiple(p.width, scale);
    int h = largest_exact_multiple(p.height, scale);
    if (w == 0 || h == 0) return p;  // no exact multiple; resampler rounds later
    if (w == p.width && h == p.height) return p;
    Plane out(w, h);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) out.at(r, c) = p.at(r, c);
    return out;
}

Plane trim_border(const Plane& p, int border) {
    if (border < 0) throw InvalidInput("trim_border: negative border");
    if (border == 0) return p;
    if (p.width <= 2 * border || p.height <= 2 * border)
        throw InvalidInput("trim_border: border too large for plane");
    Plane out(p.width - 2 * border, p.height - 2 * border);
    for (int r = 0; r < out.height; ++r)
        for (int c = 0; c < out.width; ++c) out.at(r, c) = p.at(r + border, c + border);
    return out;
}

double psnr(const Plane& a, const Plane& b) {
    if (!a.same_dims(b)) throw InvalidInput("psnr: dimension mismatch");
    if (a.data.empty()) throw InvalidInput("psnr: empty planes");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        const double d = a.data[i] - b.data[i];
        sum += d * d;
    }
    const double mse = sum / static_cast<double>(a.data.size());
    if (mse == 0.0) return kPsnrInfinite;
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

}  // namespace wsdsr
