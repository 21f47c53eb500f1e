#pragma once

#include <optional>
#include <string>

#include "flsim/echo.hpp"

namespace flsim {

/// One batch render job: scene in, images (and optional metrics) out.
struct RunConfig {
    std::string scene_path;
    BounceMode mode = BounceMode::full;
    std::string out_dir = ".";
    bool write_pgm_files = true;
    bool write_png_files = false;
    bool write_csv_files = false;
    double fanshape_pitch = 0.0;            // meters/pixel; 0 disables fanshape
    std::string reference_path;             // optional PGM for metrics
    bool dump_components = false;
    int n_threads = 0;                      // 0 = hardware concurrency
    std::optional<bool> tvg_override;

    void validate() const;
};

/// Render per config and write the outputs into out_dir (created if
/// missing), named <scene-stem>_<mode>_<kind>.<ext>. Logs the wall-clock
/// render time to stderr. Throws on any error; the CLI maps exceptions
/// to a nonzero exit status. Echo modes require a scene with a ground.
void run(const RunConfig& config);

}  // namespace flsim
