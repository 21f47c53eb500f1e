#include "flsim/scene_config.hpp"

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <set>

#include <json.hpp>

namespace flsim {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::string& where,
                         std::initializer_list<const char*> allowed) {
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!ok.count(key))
            throw std::invalid_argument("scene config: unknown key '" + where + key + "'");
    }
}

Vec3 parse_vec3(const json& j, const std::string& key) {
    if (!j.is_array() || j.size() != 3 || !j[0].is_number())
        throw std::invalid_argument("scene config: '" + key + "' must be an array of 3 numbers");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

double number_or(const json& obj, const char* key, double fallback,
                 const std::string& where) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number())
        throw std::invalid_argument("scene config: '" + where + key + "' must be a number");
    return obj[key].get<double>();
}

RigidPose parse_pose(const json& obj, const std::string& where) {
    Vec3 position;
    if (obj.contains("position")) position = parse_vec3(obj["position"], where + "position");
    const double roll = deg_to_rad(number_or(obj, "roll_deg", 0.0, where));
    const double pitch = deg_to_rad(number_or(obj, "pitch_deg", 0.0, where));
    const double yaw = deg_to_rad(number_or(obj, "yaw_deg", 0.0, where));
    return RigidPose::from_rpy(position, roll, pitch, yaw);
}

SonarIntrinsics parse_intrinsics(const json& obj) {
    reject_unknown_keys(obj, "sonar.intrinsics.",
                        {"n_beams", "n_elevation_samples", "azimuth_fov_deg",
                         "elevation_fov_deg", "r_min", "r_max", "range_bins",
                         "range_resolution", "tvg"});
    const SonarIntrinsics base = aris3000_like();
    const int n_beams = static_cast<int>(number_or(obj, "n_beams", base.n_beams,
                                                   "sonar.intrinsics."));
    const int n_elev = static_cast<int>(number_or(obj, "n_elevation_samples",
                                                  base.n_elev_samples,
                                                  "sonar.intrinsics."));
    const double az = deg_to_rad(number_or(obj, "azimuth_fov_deg",
                                           rad_to_deg(base.azimuth_fov),
                                           "sonar.intrinsics."));
    const double el = deg_to_rad(number_or(obj, "elevation_fov_deg",
                                           rad_to_deg(base.elevation_fov),
                                           "sonar.intrinsics."));
    const double r_min = number_or(obj, "r_min", base.r_min, "sonar.intrinsics.");
    const double r_max = number_or(obj, "r_max", base.r_max, "sonar.intrinsics.");
    bool tvg = base.tvg_enabled;
    if (obj.contains("tvg")) {
        if (!obj["tvg"].is_boolean())
            throw std::invalid_argument("scene config: 'sonar.intrinsics.tvg' must be a boolean");
        tvg = obj["tvg"].get<bool>();
    }
    if (obj.contains("range_bins") && obj.contains("range_resolution"))
        throw std::invalid_argument("scene config: give either 'sonar.intrinsics.range_bins' "
                                    "or 'sonar.intrinsics.range_resolution', not both");
    if (obj.contains("range_resolution")) {
        const double res = number_or(obj, "range_resolution", 0.0, "sonar.intrinsics.");
        return make_intrinsics_res(n_beams, n_elev, az, el, r_min, r_max, res, tvg);
    }
    const int bins = static_cast<int>(number_or(obj, "range_bins", base.n_range_bins,
                                                "sonar.intrinsics."));
    return make_intrinsics_bins(n_beams, n_elev, az, el, r_min, r_max, bins, tvg);
}

}  // namespace

SceneDescription load_scene_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("scene config: cannot open '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("scene config: '" + path + "' is not valid JSON: "
                                    + e.what());
    }
    if (!doc.is_object())
        throw std::invalid_argument("scene config: top level of '" + path
                                    + "' must be an object");
    reject_unknown_keys(doc, "", {"sonar", "objects", "ground"});

    const std::filesystem::path base_dir = std::filesystem::path(path).parent_path();
    SceneDescription out;
    out.intrinsics = aris3000_like();

    if (doc.contains("sonar")) {
        const json& sonar = doc["sonar"];
        reject_unknown_keys(sonar, "sonar.",
                            {"position", "roll_deg", "pitch_deg", "yaw_deg", "intrinsics"});
        out.sonar_pose = parse_pose(sonar, "sonar.");
        if (sonar.contains("intrinsics"))
            out.intrinsics = parse_intrinsics(sonar["intrinsics"]);
    }

    if (doc.contains("objects")) {
        if (!doc["objects"].is_array())
            throw std::invalid_argument("scene config: 'objects' must be an array");
        for (const json& obj : doc["objects"]) {
            reject_unknown_keys(obj, "objects[].",
                                {"mesh", "position", "roll_deg", "pitch_deg", "yaw_deg",
                                 "albedo", "source_strength"});
            if (!obj.contains("mesh") || !obj["mesh"].is_string())
                throw std::invalid_argument("scene config: 'objects[].mesh' must be a path");
            Material material;
            material.albedo = number_or(obj, "albedo", kObjectAlbedo, "objects[].");
            material.source_strength = number_or(obj, "source_strength", 1.0, "objects[].");
            const std::filesystem::path mesh_path =
                base_dir / obj["mesh"].get<std::string>();
            Mesh mesh = load_obj(mesh_path.string(), material);
            out.scene.objects.push_back(transform_mesh(mesh, parse_pose(obj, "objects[].")));
        }
    }

    if (doc.contains("ground")) {
        const json& ground = doc["ground"];
        reject_unknown_keys(ground, "ground.",
                            {"normal", "offset", "center", "half_extents",
                             "albedo", "specular"});
        Plane plane;
        if (ground.contains("normal"))
            plane.normal = normalized(parse_vec3(ground["normal"], "ground.normal"));
        plane.offset = number_or(ground, "offset", 0.0, "ground.");
        Vec3 center = plane.offset * plane.normal;
        if (ground.contains("center")) {
            center = parse_vec3(ground["center"], "ground.center");
            if (std::abs(plane.signed_distance(center)) > 1e-9)
                throw std::invalid_argument("scene config: 'ground.center' does not lie "
                                            "on the ground plane");
        }
        double hu = 10.0, hv = 10.0;
        if (ground.contains("half_extents")) {
            const json& he = ground["half_extents"];
            if (!he.is_array() || he.size() != 2 || !he[0].is_number())
                throw std::invalid_argument("scene config: 'ground.half_extents' must be "
                                            "an array of 2 numbers");
            hu = he[0].get<double>();
            hv = he[1].get<double>();
        }
        Material material;
        material.albedo = number_or(ground, "albedo", kGroundAlbedo, "ground.");
        out.ground_specular = number_or(ground, "specular", 1.0, "ground.");
        if (out.ground_specular < 0.0 || out.ground_specular > 1.0)
            throw std::invalid_argument("scene config: 'ground.specular' must be in [0,1]");

        out.scene.has_ground = true;
        out.scene.ground.plane = plane;
        out.scene.ground.mesh = make_rectangle_mesh(center, plane.normal, hu, hv, material);
        out.scene.ground.mesh.name = "ground";
    }

    out.scene.validate();
    out.sonar_pose.validate();
    out.intrinsics.validate();
    return out;
}

}  // namespace flsim
