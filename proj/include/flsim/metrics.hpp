#pragma once

#include "flsim/imaging.hpp"

namespace flsim {

/// Quality of an 8-bit image against a reference, as used for the
/// summary CSV rows.
struct MetricReport {
    double mse = 0.0;
    double psnr = 0.0;              // +infinity when the images match
    ImageGeometry coordinate_tag = ImageGeometry::polar;
};

/// Mean squared per-pixel difference, computed in double precision.
/// Throws on dimension mismatch.
double mse(const DisplayImage& a, const DisplayImage& b);

/// 10*log10(255^2 / mse); identical images yield +infinity.
double psnr(const DisplayImage& a, const DisplayImage& b);

MetricReport compare_images(const DisplayImage& a, const DisplayImage& b);

}  // namespace flsim
