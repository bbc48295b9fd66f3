#include "wsdsr/resample.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "wsdsr/errors.hpp"
#include "wsdsr/parallel.hpp"

namespace wsdsr {

namespace {

// Precomputed taps for one axis: per output index a run of input samples
// (clamped to the edge) and normalized weights.
struct AxisTaps {
    int taps = 0;
    std::vector<int> start;       // first input index per output index
    std::vector<double> weights;  // out_size x taps
};

AxisTaps build_axis(int in_size, int out_size, bool antialias) {
    const CubicKernel kernel;
    const double ratio = static_cast<double>(in_size) / out_size;
    const double stretch = (antialias && ratio > 1.0) ? ratio : 1.0;
    const double radius = kernel.support * stretch;

    AxisTaps axis;
    axis.taps = static_cast<int>(std::floor(2.0 * radius)) + 2;
    axis.start.resize(out_size);
    axis.weights.assign(static_cast<std::size_t>(out_size) * axis.taps, 0.0);

    for (int u = 0; u < out_size; ++u) {
        const double center = (u + 0.5) * ratio - 0.5;
        const int left = static_cast<int>(std::ceil(center - radius));
        axis.start[u] = left;
        double* w = &axis.weights[static_cast<std::size_t>(u) * axis.taps];
        double sum = 0.0;
        for (int t = 0; t < axis.taps; ++t) {
            const double x = (left + t - center) / stretch;
            w[t] = kernel(x);
            sum += w[t];
        }
        for (int t = 0; t < axis.taps; ++t) w[t] /= sum;
    }
    return axis;
}

inline int clamp_index(int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

// Horizontal pass: every row of src resampled to out_width samples.
Plane apply_rows(const Plane& src, const AxisTaps& axis, int out_width) {
    Plane dst(out_width, src.height);
    parallel_for(src.height, [&](int r) {
        const double* in = src.row(r);
        double* out = dst.row(r);
        for (int u = 0; u < out_width; ++u) {
            const double* w = &axis.weights[static_cast<std::size_t>(u) * axis.taps];
            const int left = axis.start[u];
            double acc = 0.0;
            for (int t = 0; t < axis.taps; ++t) acc += w[t] * in[clamp_index(left + t, src.width)];
            out[u] = acc;
        }
    });
    return dst;
}

// Vertical pass: every column resampled to out_height samples.
Plane apply_cols(const Plane& src, const AxisTaps& axis, int out_height) {
    Plane dst(src.width, out_height);
    parallel_for(out_height, [&](int u) {
        const double* w = &axis.weights[static_cast<std::size_t>(u) * axis.taps];
        const int left = axis.start[u];
        double* out = dst.row(u);
        std::fill(out, out + src.width, 0.0);
        for (int t = 0; t < axis.taps; ++t) {
            const double* in = src.row(clamp_index(left + t, src.height));
            const double wt = w[t];
            for (int c = 0; c < src.width; ++c) out[c] += wt * in[c];
        }
    });
    return dst;
}

int rounded_dim(double v) {
    const int d = static_cast<int>(std::lround(v));
    return d < 1 ? 1 : d;
}

void check_spec(const ScaleSpec& spec) {
    if (!(spec.sx > 1.0) || !(spec.sy > 1.0) || !std::isfinite(spec.sx) || !std::isfinite(spec.sy))
        throw InvalidInput("ScaleSpec: scale factors must be finite and > 1");
}

}  // namespace

Plane resize_to(const Plane& p, int out_width, int out_height, bool antialias) {
    if (out_width < 1 || out_height < 1) throw InvalidInput("resize_to: output smaller than 1x1");
    if (p.width < 1 || p.height < 1) throw InvalidInput("resize_to: empty input");
    if (out_width == p.width && out_height == p.height) return p;

    const AxisTaps hx = build_axis(p.width, out_width, antialias);
    const AxisTaps vx = build_axis(p.height, out_height, antialias);
    // Run the shrinking pass first to keep the intermediate small.
    if (static_cast<long long>(out_width) * p.height <=
        static_cast<long long>(p.width) * out_height) {
        return apply_cols(apply_rows(p, hx, out_width), vx, out_height);
    }
    return apply_rows(apply_cols(p, vx, out_height), hx, out_width);
}

Plane downsample(const Plane& p, const ScaleSpec& spec) {
    check_spec(spec);
    return resize_to(p, rounded_dim(p.width / spec.sx), rounded_dim(p.height / spec.sy), true);
}

Plane upsample(const Plane& p, const ScaleSpec& spec) {
    check_spec(spec);
    return resize_to(p, rounded_dim(p.width * spec.sx), rounded_dim(p.height * spec.sy), false);
}

}  // namespace wsdsr
