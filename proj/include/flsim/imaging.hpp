#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flsim/raytracer.hpp"

namespace flsim {

/// Beam-by-range accumulation of backscatter: row = beam index p,
/// column = range bin d. Carries a copy of the intrinsics that defined
/// its dimensions and range window.
struct PolarImage {
    SonarIntrinsics intrinsics;
    std::vector<double> values;     // row-major [p * n_range_bins + d], >= 0

    int n_beams() const { return intrinsics.n_beams; }
    int n_bins() const { return intrinsics.n_range_bins; }

    double at(int p, int d) const {
        return values[static_cast<std::size_t>(p) * intrinsics.n_range_bins + d];
    }
    double& at(int p, int d) {
        return values[static_cast<std::size_t>(p) * intrinsics.n_range_bins + d];
    }
};

PolarImage zeros_like(const SonarIntrinsics& intr);

/// Collapse the elevation dimension: every ray (p,q) whose hit distance
/// falls in the range window adds its intensity to row p at bin
/// d = floor((r - r_min)/r_res); rays outside [r_min, r_max) and misses
/// contribute nothing. Accumulation order within a row is ascending q,
/// so results are bit-identical for any thread count.
PolarImage form_acoustic_image(const RayBuffers& buffers, const SonarIntrinsics& intr,
                               int n_threads = 0);

/// Elementwise sum; throws on dimension mismatch. The left operand's
/// intrinsics are carried over.
PolarImage add_images(const PolarImage& a, const PolarImage& b);

/// Elementwise scale by a non-negative factor.
PolarImage scale_image(const PolarImage& a, double factor);

enum class ImageGeometry { polar, fanshape };

/// 8-bit raster for display and metric evaluation.
struct DisplayImage {
    ImageGeometry geometry = ImageGeometry::polar;
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;   // row-major

    std::uint8_t at(int row, int col) const {
        return pixels[static_cast<std::size_t>(row) * width + col];
    }
};

/// Map to 0..255: value * (255/global max) when gain is absent (all-zero
/// input stays all-zero), else value * gain; clamped, rounded half-up.
/// Rows are beams, columns are range bins.
DisplayImage normalize_image(const PolarImage& img, std::optional<double> gain = std::nullopt);

/// Rasterize the fan into Euclidean coordinates (x = r cos theta forward,
/// y = r sin theta lateral) at pixel_pitch meters per pixel. Each pixel
/// center inside [r_min, r_max] x [-az/2, +az/2] takes the display value
/// of its containing (nearest) polar bin under the same normalization as
/// normalize_image; pixels outside the fan are 0. Row 0 is the far edge.
DisplayImage to_fanshape(const PolarImage& img, double pixel_pitch,
                         std::optional<double> gain = std::nullopt);

}  // namespace flsim
