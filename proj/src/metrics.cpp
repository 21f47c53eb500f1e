#include "flsim/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace flsim {

double mse(const DisplayImage& a, const DisplayImage& b) {
    if (a.width != b.width || a.height != b.height)
        throw std::invalid_argument("mse: image dimensions "
                                    + std::to_string(a.width) + "x" + std::to_string(a.height)
                                    + " vs " + std::to_string(b.width) + "x"
                                    + std::to_string(b.height) + " do not match");
    if (a.pixels.empty()) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        const double d = static_cast<double>(a.pixels[i]) - static_cast<double>(b.pixels[i]);
        sum += d * d;
    }
    return sum / static_cast<double>(a.pixels.size());
}

double psnr(const DisplayImage& a, const DisplayImage& b) {
    const double err = mse(a, b);
    if (err == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / err);
}

MetricReport compare_images(const DisplayImage& a, const DisplayImage& b) {
    MetricReport report;
    report.mse = mse(a, b);
    report.psnr = (report.mse == 0.0) ? std::numeric_limits<double>::infinity()
                                      : 10.0 * std::log10(255.0 * 255.0 / report.mse);
    report.coordinate_tag = a.geometry;
    return report;
}

}  // namespace flsim
