#pragma once

#include <string>

#include "wsdsr/image.hpp"

namespace wsdsr {

/// Reads an 8-bit PNG. Grayscale files yield a Gray MultiPlane, everything
/// else (palette, RGB, RGBA) an Rgb one. 16-bit files are reduced to 8.
MultiPlane read_png(const std::string& path);

/// Writes a Gray or Rgb MultiPlane as an 8-bit PNG. Values are clamped and
/// rounded; YCbCr images must be converted by the caller first.
void write_png(const std::string& path, const MultiPlane& img);

void write_png(const std::string& path, const Plane& plane);

/// Plain-text exchange format: "width height" then row-major values at full
/// precision, whitespace separated.
void write_plane_text(const std::string& path, const Plane& p);
Plane read_plane_text(const std::string& path);

}  // namespace wsdsr
