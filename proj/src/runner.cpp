#include "flsim/runner.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "flsim/image_io.hpp"
#include "flsim/metrics.hpp"
#include "flsim/scene_config.hpp"

namespace flsim {

namespace fs = std::filesystem;

void RunConfig::validate() const {
    if (scene_path.empty())
        throw std::invalid_argument("run config: scene path is empty");
    if (out_dir.empty())
        throw std::invalid_argument("run config: output directory is empty");
    if (fanshape_pitch < 0.0)
        throw std::invalid_argument("run config: fanshape pitch must be positive");
}

namespace {

void write_image_files(const RunConfig& config, const fs::path& stem_path,
                       const DisplayImage& display) {
    if (config.write_pgm_files) write_pgm(stem_path.string() + ".pgm", display);
    if (config.write_png_files) write_png(stem_path.string() + ".png", display);
}

void dump_component(const RunConfig& config, const fs::path& out_dir,
                    const std::string& stem, const char* suffix,
                    const PolarImage& img) {
    const fs::path base = out_dir / (stem + suffix);
    write_polar_csv(base.string() + ".csv", img);
    write_image_files(config, base, normalize_image(img));
}

}  // namespace

void run(const RunConfig& config) {
    config.validate();

    const SceneDescription desc = load_scene_file(config.scene_path);
    if (config.mode != BounceMode::single && !desc.scene.has_ground)
        throw std::invalid_argument("run: mode '" + std::string(to_string(config.mode))
                                    + "' needs a scene with a ground; '"
                                    + config.scene_path + "' has none");

    SonarIntrinsics intr = desc.intrinsics;
    if (config.tvg_override) intr.tvg_enabled = *config.tvg_override;

    EchoOptions options;
    options.ground_specular = desc.ground_specular;
    options.n_threads = config.n_threads;

    const auto t0 = std::chrono::steady_clock::now();
    const EchoComponents ec = compose_ground_echo(desc.scene, desc.sonar_pose, intr,
                                                  config.mode, options);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;
    std::cerr << "rendered " << intr.n_beams << "x" << intr.n_range_bins
              << " (" << to_string(config.mode) << ") in "
              << elapsed.count() << " s\n";

    const fs::path out_dir(config.out_dir);
    fs::create_directories(out_dir);
    const std::string stem = fs::path(config.scene_path).stem().string()
        + "_" + to_string(config.mode);

    const DisplayImage polar_display = normalize_image(ec.composed);
    write_image_files(config, out_dir / (stem + "_polar"), polar_display);
    if (config.write_csv_files)
        write_polar_csv((out_dir / (stem + "_polar.csv")).string(), ec.composed);

    std::optional<DisplayImage> fanshape_display;
    if (config.fanshape_pitch > 0.0) {
        fanshape_display = to_fanshape(ec.composed, config.fanshape_pitch);
        write_image_files(config, out_dir / (stem + "_fanshape"), *fanshape_display);
    }

    if (config.dump_components) {
        dump_component(config, out_dir, stem, "_og", ec.i_og);
        dump_component(config, out_dir, stem, "_o", ec.i_o);
        dump_component(config, out_dir, stem, "_g", ec.i_g);
        dump_component(config, out_dir, stem, "_oo", ec.i_oo);
        dump_component(config, out_dir, stem, "_mirror", ec.i_mirror);
        dump_component(config, out_dir, stem, "_c23", ec.i_c23);
        dump_component(config, out_dir, stem, "_composed", ec.composed);
    }

    if (!config.reference_path.empty()) {
        // The reference must match whichever raster it is compared to;
        // pick by dimensions, preferring the polar image.
        const DisplayImage reference = read_pgm(config.reference_path);
        const DisplayImage* compared = &polar_display;
        ImageGeometry tag = ImageGeometry::polar;
        if ((reference.width != polar_display.width
             || reference.height != polar_display.height)
            && fanshape_display
            && reference.width == fanshape_display->width
            && reference.height == fanshape_display->height) {
            compared = &*fanshape_display;
            tag = ImageGeometry::fanshape;
        }
        const MetricReport report = compare_images(*compared, reference);

        const fs::path csv_path = out_dir / (stem + "_metrics.csv");
        std::ofstream csv(csv_path);
        if (!csv) throw std::runtime_error("run: cannot open '" + csv_path.string() + "'");
        csv << "scene_id,mode,coordinate_tag,psnr,mse\n"
            << fs::path(config.scene_path).stem().string() << ","
            << to_string(config.mode) << ","
            << (tag == ImageGeometry::polar ? "polar" : "fanshape") << ","
            << report.psnr << "," << report.mse << "\n";
    }
}

}  // namespace flsim
