#pragma once

#include <string>

#include "flsim/raytracer.hpp"
#include "flsim/scene.hpp"

namespace flsim {

/// A fully assembled simulation setup loaded from a JSON scene file.
struct SceneDescription {
    Scene scene;
    RigidPose sonar_pose;
    SonarIntrinsics intrinsics;
    double ground_specular = 1.0;
};

/// Load a scene description. Mesh paths are resolved relative to the
/// JSON file's directory. Unknown or malformed keys raise
/// std::invalid_argument naming the key. Schema (angles in degrees):
///
/// {
///   "sonar": {
///     "position": [x, y, z],
///     "roll_deg": 0.0, "pitch_deg": 0.0, "yaw_deg": 0.0,
///     "intrinsics": {                       // optional, defaults shown
///       "n_beams": 128, "n_elevation_samples": 256,
///       "azimuth_fov_deg": 30.0, "elevation_fov_deg": 14.0,
///       "r_min": 1.0, "r_max": 6.0,
///       "range_bins": 1288,                 // or "range_resolution": meters
///       "tvg": true
///     }
///   },
///   "objects": [
///     { "mesh": "meshes/box.obj",
///       "position": [x, y, z],
///       "roll_deg": 0.0, "pitch_deg": 0.0, "yaw_deg": 0.0,
///       "albedo": 0.4, "source_strength": 1.0 }
///   ],
///   "ground": {                             // optional
///     "normal": [0, 0, 1], "offset": 0.0,
///     "center": [x, y, z],                  // must lie on the plane
///     "half_extents": [hu, hv],
///     "albedo": 0.8, "specular": 1.0
///   }
/// }
SceneDescription load_scene_file(const std::string& path);

}  // namespace flsim
