#include "flsim/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "flsim/parallel.hpp"

namespace flsim {

PolarImage zeros_like(const SonarIntrinsics& intr) {
    intr.validate();
    PolarImage img;
    img.intrinsics = intr;
    img.values.assign(static_cast<std::size_t>(intr.n_beams) * intr.n_range_bins, 0.0);
    return img;
}

PolarImage form_acoustic_image(const RayBuffers& buffers, const SonarIntrinsics& intr,
                               int n_threads) {
    if (buffers.n_beams != intr.n_beams || buffers.n_elev != intr.n_elev_samples)
        throw std::invalid_argument("form_acoustic_image: buffer dimensions "
                                    + std::to_string(buffers.n_beams) + "x"
                                    + std::to_string(buffers.n_elev)
                                    + " do not match intrinsics");
    PolarImage img = zeros_like(intr);
    const double bins = static_cast<double>(intr.n_range_bins);
    parallel_rows(intr.n_beams, n_threads, [&](int p) {
        for (int q = 0; q < intr.n_elev_samples; ++q) {
            const double r = buffers.distance(p, q);
            // Misses hold +infinity, which fails the window test below
            // before any integer conversion.
            const double d = std::floor((r - intr.r_min) / intr.r_res);
            if (d >= 0.0 && d < bins)
                img.at(p, static_cast<int>(d)) += buffers.intensity(p, q);
        }
    });
    return img;
}

PolarImage add_images(const PolarImage& a, const PolarImage& b) {
    if (a.n_beams() != b.n_beams() || a.n_bins() != b.n_bins())
        throw std::invalid_argument("add_images: dimension mismatch");
    PolarImage out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] += b.values[i];
    return out;
}

PolarImage scale_image(const PolarImage& a, double factor) {
    if (factor < 0.0)
        throw std::invalid_argument("scale_image: factor must be non-negative");
    PolarImage out = a;
    for (double& v : out.values) v *= factor;
    return out;
}

namespace {

std::uint8_t quantize(double value, double gain) {
    const double scaled = std::floor(value * gain + 0.5);   // round half-up
    if (scaled <= 0.0) return 0;
    if (scaled >= 255.0) return 255;
    return static_cast<std::uint8_t>(scaled);
}

double display_gain(const PolarImage& img, std::optional<double> gain) {
    if (gain) return *gain;
    const double max = img.values.empty()
        ? 0.0 : *std::max_element(img.values.begin(), img.values.end());
    return max > 0.0 ? 255.0 / max : 0.0;
}

}  // namespace

DisplayImage normalize_image(const PolarImage& img, std::optional<double> gain) {
    const double g = display_gain(img, gain);
    DisplayImage out;
    out.geometry = ImageGeometry::polar;
    out.height = img.n_beams();
    out.width = img.n_bins();
    out.pixels.resize(img.values.size());
    for (std::size_t i = 0; i < img.values.size(); ++i)
        out.pixels[i] = quantize(img.values[i], g);
    return out;
}

DisplayImage to_fanshape(const PolarImage& img, double pixel_pitch,
                         std::optional<double> gain) {
    if (!(pixel_pitch > 0.0))
        throw std::invalid_argument("to_fanshape: pixel pitch must be positive");
    const SonarIntrinsics& intr = img.intrinsics;
    const double half_az = 0.5 * intr.azimuth_fov;
    const double x_min = intr.r_min * std::cos(half_az);
    const double x_max = intr.r_max;
    const double y_max = intr.r_max * std::sin(half_az);

    DisplayImage out;
    out.geometry = ImageGeometry::fanshape;
    out.height = std::max(1, static_cast<int>(std::ceil((x_max - x_min) / pixel_pitch)));
    out.width = std::max(1, static_cast<int>(std::ceil(2.0 * y_max / pixel_pitch)));
    out.pixels.assign(static_cast<std::size_t>(out.height) * out.width, 0);

    const double g = display_gain(img, gain);
    for (int row = 0; row < out.height; ++row) {
        const double x = x_max - (row + 0.5) * pixel_pitch;    // row 0 = far edge
        for (int col = 0; col < out.width; ++col) {
            const double y = -y_max + (col + 0.5) * pixel_pitch;
            const double r = std::hypot(x, y);
            if (r < intr.r_min || r > intr.r_max) continue;
            const double theta = std::atan2(y, x);
            if (std::abs(theta) > half_az) continue;
            // The containing bin is the nearest one; clamp so the closed
            // far/right edges stay inside the image.
            int p = static_cast<int>(std::floor((theta + half_az)
                                                / (intr.azimuth_fov / intr.n_beams)));
            int d = static_cast<int>(std::floor((r - intr.r_min) / intr.r_res));
            p = std::clamp(p, 0, intr.n_beams - 1);
            d = std::clamp(d, 0, intr.n_range_bins - 1);
            out.pixels[static_cast<std::size_t>(row) * out.width + col]
                = quantize(img.at(p, d), g);
        }
    }
    return out;
}

}  // namespace flsim
