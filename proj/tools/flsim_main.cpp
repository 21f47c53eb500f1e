#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flsim/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Forward-looking sonar image simulator with ground-echo multipath"};

    flsim::RunConfig config;
    std::string mode = "full";
    std::string tvg;
    std::vector<std::string> formats = {"pgm"};
    int seed = 0;

    app.add_option("--scene", config.scene_path, "Scene description JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    app.add_option("--mode", mode,
                   "Bounce mode: single (direct only), triple (adds "
                   "ground-object-ground paths), full (adds double bounces too)")
        ->check(CLI::IsMember({"single", "triple", "full"}));
    app.add_option("--out", config.out_dir, "Output directory (created if missing)");
    app.add_option("--format", formats, "Output formats: pgm, png, csv")
        ->check(CLI::IsMember({"pgm", "png", "csv"}));
    app.add_option("--fanshape-pitch", config.fanshape_pitch,
                   "Also write a Euclidean fan-shape raster at this pixel pitch "
                   "(meters/pixel)")
        ->check(CLI::PositiveNumber);
    app.add_option("--reference", config.reference_path,
                   "Reference PGM; writes a CSV with PSNR/MSE against it")
        ->check(CLI::ExistingFile);
    app.add_flag("--dump-components", config.dump_components,
                 "Also write every multipath component image");
    app.add_option("--threads", config.n_threads, "Render threads (0 = all cores)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--tvg", tvg, "Override time-variant gain: on or off")
        ->check(CLI::IsMember({"on", "off"}));
    app.add_option("--seed", seed,
                   "Reserved for future stochastic effects; the pipeline is "
                   "deterministic and ignores it");

    CLI11_PARSE(app, argc, argv);

    static const std::map<std::string, flsim::BounceMode> modes = {
        {"single", flsim::BounceMode::single},
        {"triple", flsim::BounceMode::single_and_triple},
        {"full", flsim::BounceMode::full},
    };
    config.mode = modes.at(mode);
    if (!tvg.empty()) config.tvg_override = (tvg == "on");
    config.write_pgm_files = config.write_png_files = config.write_csv_files = false;
    for (const std::string& f : formats) {
        if (f == "pgm") config.write_pgm_files = true;
        else if (f == "png") config.write_png_files = true;
        else if (f == "csv") config.write_csv_files = true;
    }

    try {
        flsim::run(config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
