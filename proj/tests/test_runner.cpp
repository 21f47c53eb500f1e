#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "flsim/runner.hpp"
#include "flsim/scene_config.hpp"

using namespace flsim;
namespace fs = std::filesystem;

namespace {

/// Scratch directory with scene fixtures, wiped on destruction.
struct RunnerFixture {
    fs::path dir;

    explicit RunnerFixture(const std::string& name) {
        dir = fs::temp_directory_path() / ("flsim_runner_" + name);
        fs::remove_all(dir);
        fs::create_directories(dir);
        write(
            "box.obj",
            "# unit cube\n"
            "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\n"
            "v 0 0 1\nv 1 0 1\nv 1 1 1\nv 0 1 1\n"
            "f 1 4 3 2\nf 5 6 7 8\nf 1 2 6 5\nf 2 3 7 6\nf 3 4 8 7\nf 4 1 5 8\n");
        write("tank.json", scene_json(1.0));
        write("tank_dull.json", scene_json(0.25));
        write("floating.json",
              "{\n"
              "  \"sonar\": {\"position\": [0, 0, 0.25], \"pitch_deg\": 5.0,\n"
              "    \"intrinsics\": " + intrinsics_json() + "},\n"
              "  \"objects\": [" + box_json() + "]\n"
              "}\n");
    }
    ~RunnerFixture() { fs::remove_all(dir); }

    void write(const std::string& name, const std::string& text) const {
        std::ofstream out(dir / name);
        out << text;
    }

    static std::string intrinsics_json() {
        return "{\"n_beams\": 16, \"n_elevation_samples\": 8,\n"
               "  \"azimuth_fov_deg\": 28.0, \"elevation_fov_deg\": 20.0,\n"
               "  \"r_min\": 0.6, \"r_max\": 4.0, \"range_bins\": 68, \"tvg\": true}";
    }
    static std::string box_json() {
        return "{\"mesh\": \"box.obj\", \"position\": [2.2, -0.5, 0.3]}";
    }
    static std::string scene_json(double specular) {
        std::ostringstream out;
        out << "{\n"
            << "  \"sonar\": {\"position\": [0, 0, 0.25], \"pitch_deg\": 5.0,\n"
            << "    \"intrinsics\": " << intrinsics_json() << "},\n"
            << "  \"objects\": [" << box_json() << "],\n"
            << "  \"ground\": {\"normal\": [0, 0, 1], \"offset\": 0.0,\n"
            << "    \"center\": [3, 0, 0], \"half_extents\": [5, 4],\n"
            << "    \"albedo\": 0.8, \"specular\": " << specular << "}\n"
            << "}\n";
        return out.str();
    }

    std::string scene() const { return (dir / "tank.json").string(); }
    fs::path out(const std::string& name) const { return dir / name; }
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string thrown_message(const RunConfig& config) {
    try {
        run(config);
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("run writes the advertised output files") {
    const RunnerFixture fx("outputs");
    RunConfig config;
    config.scene_path = fx.scene();
    config.out_dir = fx.out("out").string();
    config.write_png_files = true;
    config.write_csv_files = true;
    config.fanshape_pitch = 0.02;
    config.dump_components = true;
    run(config);

    const fs::path out = fx.out("out");
    for (const char* name : {"tank_full_polar.pgm", "tank_full_polar.png",
                             "tank_full_polar.csv", "tank_full_fanshape.pgm",
                             "tank_full_fanshape.png", "tank_full_og.csv",
                             "tank_full_o.csv", "tank_full_g.csv", "tank_full_oo.csv",
                             "tank_full_mirror.csv", "tank_full_c23.csv",
                             "tank_full_composed.csv", "tank_full_og.pgm",
                             "tank_full_composed.png"}) {
        CAPTURE(name);
        CHECK(fs::exists(out / name));
    }

    // Polar raster: one row per beam, one column per range bin.
    const std::string pgm = slurp(out / "tank_full_polar.pgm");
    CHECK(pgm.find("P5\n68 16\n") != std::string::npos);

    // The composed CSV must re-read as 16 rows x 68 columns.
    std::istringstream csv(slurp(out / "tank_full_polar.csv"));
    std::string line;
    int rows = 0;
    while (std::getline(csv, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 67);
    }
    CHECK(rows == 16);
}

TEST_CASE("repeated runs emit identical bytes regardless of thread count") {
    const RunnerFixture fx("determinism");
    RunConfig config;
    config.scene_path = fx.scene();
    config.write_csv_files = true;

    config.out_dir = fx.out("run1").string();
    config.n_threads = 1;
    run(config);
    config.out_dir = fx.out("run2").string();
    config.n_threads = 3;
    run(config);

    CHECK(slurp(fx.out("run1") / "tank_full_polar.csv")
          == slurp(fx.out("run2") / "tank_full_polar.csv"));
    CHECK(slurp(fx.out("run1") / "tank_full_polar.pgm")
          == slurp(fx.out("run2") / "tank_full_polar.pgm"));
}

TEST_CASE("a reference image produces a metrics row") {
    const RunnerFixture fx("metrics");
    RunConfig config;
    config.scene_path = fx.scene();
    config.out_dir = fx.out("first").string();
    run(config);

    SUBCASE("self-comparison in polar coordinates") {
        config.out_dir = fx.out("second").string();
        config.reference_path = (fx.out("first") / "tank_full_polar.pgm").string();
        run(config);

        std::istringstream csv(slurp(fx.out("second") / "tank_full_metrics.csv"));
        std::string header, row;
        REQUIRE(std::getline(csv, header));
        REQUIRE(std::getline(csv, row));
        CHECK(header == "scene_id,mode,coordinate_tag,psnr,mse");
        std::istringstream cells(row);
        std::string scene_id, mode, tag, psnr_text, mse_text;
        std::getline(cells, scene_id, ',');
        std::getline(cells, mode, ',');
        std::getline(cells, tag, ',');
        std::getline(cells, psnr_text, ',');
        std::getline(cells, mse_text, ',');
        CHECK(scene_id == "tank");
        CHECK(mode == "full");
        CHECK(tag == "polar");
        CHECK(psnr_text == "inf");
        CHECK(std::stod(mse_text) == 0.0);
    }
    SUBCASE("fanshape references are matched by their dimensions") {
        config.fanshape_pitch = 0.02;
        config.out_dir = fx.out("fan").string();
        run(config);
        config.out_dir = fx.out("fan2").string();
        config.reference_path = (fx.out("fan") / "tank_full_fanshape.pgm").string();
        run(config);
        const std::string csv = slurp(fx.out("fan2") / "tank_full_metrics.csv");
        CHECK(csv.find(",fanshape,") != std::string::npos);
        CHECK(csv.find("inf") != std::string::npos);
    }
}

TEST_CASE("configuration toggles reach the render") {
    const RunnerFixture fx("toggles");
    RunConfig config;
    config.scene_path = fx.scene();
    config.write_csv_files = true;
    config.write_pgm_files = false;

    config.out_dir = fx.out("base").string();
    run(config);

    SUBCASE("disabling gain compensation changes the image") {
        config.out_dir = fx.out("tvg_off").string();
        config.tvg_override = false;
        run(config);
        CHECK(slurp(fx.out("base") / "tank_full_polar.csv")
              != slurp(fx.out("tvg_off") / "tank_full_polar.csv"));
    }
    SUBCASE("the ground specular weight from the scene file is honored") {
        config.scene_path = (fx.dir / "tank_dull.json").string();
        config.out_dir = fx.out("dull").string();
        run(config);
        CHECK(slurp(fx.out("base") / "tank_full_polar.csv")
              != slurp(fx.out("dull") / "tank_dull_full_polar.csv"));
    }
    SUBCASE("single mode drops the echo energy") {
        config.mode = BounceMode::single;
        config.out_dir = fx.out("single").string();
        run(config);
        CHECK(slurp(fx.out("base") / "tank_full_polar.csv")
              != slurp(fx.out("single") / "tank_single_polar.csv"));
    }
}

TEST_CASE("echo modes require a ground") {
    const RunnerFixture fx("no_ground");
    RunConfig config;
    config.scene_path = (fx.dir / "floating.json").string();
    config.out_dir = fx.out("out").string();

    config.mode = BounceMode::full;
    const std::string message = thrown_message(config);
    CHECK(message.find("needs a scene with a ground") != std::string::npos);
    CHECK(message.find("floating.json") != std::string::npos);

    // Without echo paths the plain render is well defined.
    config.mode = BounceMode::single;
    CHECK_NOTHROW(run(config));
    CHECK(fs::exists(fx.out("out") / "floating_single_polar.pgm"));
}

TEST_CASE("scene file problems are reported by name") {
    const RunnerFixture fx("bad_scenes");
    RunConfig config;
    config.out_dir = fx.out("out").string();

    SUBCASE("missing file") {
        config.scene_path = (fx.dir / "absent.json").string();
        CHECK_THROWS(run(config));
    }
    SUBCASE("unknown keys are named") {
        fx.write("typo.json",
                 "{\"sonar\": {\"position\": [0,0,1], \"pitch_deg\": 3.0},\n"
                 " \"objects\": [], \"wavelength\": 42}\n");
        config.scene_path = (fx.dir / "typo.json").string();
        config.mode = BounceMode::single;
        CHECK(thrown_message(config).find("wavelength") != std::string::npos);
    }
    SUBCASE("range_bins and range_resolution cannot both be given") {
        fx.write("over.json",
                 "{\"sonar\": {\"position\": [0,0,1],\n"
                 "  \"intrinsics\": {\"range_bins\": 100, \"range_resolution\": 0.01}},\n"
                 " \"objects\": []}\n");
        config.scene_path = (fx.dir / "over.json").string();
        config.mode = BounceMode::single;
        const std::string message = thrown_message(config);
        CHECK(message.find("range_bins") != std::string::npos);
        CHECK(message.find("range_resolution") != std::string::npos);
    }
}

TEST_CASE("run config validation") {
    RunConfig config;
    SUBCASE("scene path is required") {
        CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    }
    SUBCASE("fanshape pitch cannot be negative") {
        config.scene_path = "scene.json";
        config.fanshape_pitch = -0.5;
        CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    }
}
