#pragma once

#include <string>

#include "flsim/imaging.hpp"

namespace flsim {

/// Binary PGM (P5, maxval 255), row-major.
void write_pgm(const std::string& path, const DisplayImage& img);

/// Reads a P5 PGM with maxval <= 255. Header comments are honored. The
/// geometry tag is set to `geometry` (the format does not carry one).
DisplayImage read_pgm(const std::string& path,
                      ImageGeometry geometry = ImageGeometry::polar);

/// Minimal 8-bit grayscale PNG (zlib-compressed, no interlace).
void write_png(const std::string& path, const DisplayImage& img);

/// Raw polar values as CSV: one row per beam, full double precision.
void write_polar_csv(const std::string& path, const PolarImage& img);

}  // namespace flsim
