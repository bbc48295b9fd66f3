#pragma once

#include "wsdsr/image.hpp"

namespace wsdsr {

// Studio-range BT.601: Y in [16,235], Cb/Cr in [16,240] for in-gamut RGB.
// This is the convention of the SISR benchmark literature; full-range
// coefficients would shift every reported PSNR.

/// RGB -> YCbCr. Input values are expected in [0,255].
MultiPlane rgb_to_ycbcr(const MultiPlane& img);

/// YCbCr -> RGB, clamped to [0,255]. Exact inverse of rgb_to_ycbcr for
/// in-gamut inputs up to floating-point error.
MultiPlane ycbcr_to_rgb(const MultiPlane& img);

/// Luminance (BT.601 studio Y) of one RGB pixel.
double rgb_luma(double r, double g, double b);

/// Y plane of an RGB image, without building the chroma planes.
Plane rgb_luma_plane(const MultiPlane& img);

}  // namespace wsdsr
