#pragma once

#include "wsdsr/image.hpp"

namespace wsdsr {

/// Scale factor of the sampling operator; sx/sy > 1 means the low resolution
/// image is that many times smaller per axis.
struct ScaleSpec {
    double sx = 0.0;
    double sy = 0.0;

    static ScaleSpec uniform(double s) { return {s, s}; }
};

/// Keys cubic convolution kernel. Weights at each output sample sum to 1
/// after normalization.
struct CubicKernel {
    double a = -0.5;
    double support = 2.0;

    double operator()(double x) const {
        x = x < 0.0 ? -x : x;
        if (x < 1.0) return ((a + 2.0) * x - (a + 3.0)) * x * x + 1.0;
        if (x < 2.0) return (((x - 5.0) * x + 8.0) * x - 4.0) * a;
        return 0.0;
    }
};

/// Resizes to explicit output dimensions with the separable cubic kernel.
/// Output coordinate u samples input coordinate (u+0.5)*(in/out)-0.5 on each
/// axis. When antialias is set and an axis shrinks, the kernel support is
/// stretched by the shrink ratio. Boundary taps replicate the edge sample and
/// weights are renormalized.
Plane resize_to(const Plane& p, int out_width, int out_height, bool antialias);

/// Sampling operator H: decimation by spec with anti-aliasing.
/// Output dims = round(input / s).
Plane downsample(const Plane& p, const ScaleSpec& spec);

/// Up-sampling operator U used by back-projection: plain bicubic
/// interpolation, no anti-aliasing. Output dims = round(input * s).
Plane upsample(const Plane& p, const ScaleSpec& spec);

}  // namespace wsdsr
