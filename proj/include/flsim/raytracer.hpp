#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "flsim/geometry.hpp"
#include "flsim/scene.hpp"

namespace flsim {

/// Sonar sampling geometry. The boresight is +x in the sonar frame;
/// azimuth sweeps across beams, elevation across the samples that are
/// later collapsed into each beam. Range bins cover [r_min, r_max).
struct SonarIntrinsics {
    int n_beams = 0;            // M
    int n_elev_samples = 0;     // L rays per beam across the elevation fan
    double azimuth_fov = 0.0;   // radians
    double elevation_fov = 0.0; // radians
    double r_min = 0.0;         // meters
    double r_max = 0.0;         // meters
    double r_res = 0.0;         // meters per range bin
    int n_range_bins = 0;       // l
    bool tvg_enabled = true;    // time-variant gain compensates 1/r^2 loss

    /// Azimuth of beam p / elevation of sample q: bin centers of uniform
    /// grids over [-fov/2, +fov/2].
    double beam_azimuth(int p) const {
        return -0.5 * azimuth_fov + (p + 0.5) * azimuth_fov / n_beams;
    }
    double sample_elevation(int q) const {
        return -0.5 * elevation_fov + (q + 0.5) * elevation_fov / n_elev_samples;
    }

    /// Throws std::invalid_argument on inconsistent values. The bin-count
    /// check allows 1e-9 of floating-point slack around
    /// ceil((r_max - r_min)/r_res).
    void validate() const;
};

/// Intrinsics with the bin count chosen up front; r_res is derived as
/// (r_max - r_min)/n_range_bins.
SonarIntrinsics make_intrinsics_bins(int n_beams, int n_elev_samples,
                                     double azimuth_fov, double elevation_fov,
                                     double r_min, double r_max, int n_range_bins,
                                     bool tvg_enabled = true);

/// Intrinsics with the range resolution chosen up front; n_range_bins is
/// derived as ceil((r_max - r_min)/r_res) with 1e-9 slack.
SonarIntrinsics make_intrinsics_res(int n_beams, int n_elev_samples,
                                    double azimuth_fov, double elevation_fov,
                                    double r_min, double r_max, double r_res,
                                    bool tvg_enabled = true);

/// Default profile modeled on a 128-beam, 1288-range-bin imaging sonar.
/// The 30 deg azimuth / 14 deg elevation FOVs and the 1..6 m window are
/// stand-in defaults, fully overridable per run.
SonarIntrinsics aris3000_like();

/// All ray origins coincide (monostatic sonar); directions are unit
/// vectors in the world frame, stored row-major as [p * L + q].
struct RayGrid {
    Vec3 origin;
    int n_beams = 0;
    int n_elev = 0;
    std::vector<Vec3> directions;

    const Vec3& direction(int p, int q) const {
        return directions[static_cast<std::size_t>(p) * n_elev + q];
    }
};

RayGrid generate_rays(const SonarIntrinsics& intr, const RigidPose& pose);

struct Hit {
    double distance = 0.0;
    Vec3 point;
    Vec3 normal;                      // unit, from triangle winding
    const Material* material = nullptr;
};

/// Watertight-enough barycentric ray/triangle test. Intersections closer
/// than 1e-9 m are rejected to avoid grazing self-hits. Returns the ray
/// parameter (= distance for unit directions) through t_out.
bool ray_triangle_intersect(const Vec3& orig, const Vec3& dir,
                            const Vec3& v0, const Vec3& v1, const Vec3& v2,
                            double& t_out);

/// Nearest positive intersection across every mesh of the scene (objects
/// in order, then the ground mesh if present). Back-facing hits are
/// reported too; shade() zeroes them.
std::optional<Hit> closest_hit(const Vec3& origin, const Vec3& dir, const Scene& scene);

/// Lambertian backscatter: source_strength * l(r) * albedo * cos(alpha),
/// where alpha is the incidence angle and l(r) is 1 with TVG enabled and
/// 1/r^2 without. Back-facing hits (cos(alpha) <= 0) return +0.0.
double shade(const Hit& hit, const Vec3& ray_dir, bool tvg_enabled);

/// Per-ray distance and intensity buffers on the M x L grid. Missed rays
/// hold kNoHit (greater than any r_max, never binned) and intensity 0.
struct RayBuffers {
    static constexpr double kNoHit = std::numeric_limits<double>::infinity();

    int n_beams = 0;
    int n_elev = 0;
    std::vector<double> distances;
    std::vector<double> intensities;

    double distance(int p, int q) const {
        return distances[static_cast<std::size_t>(p) * n_elev + q];
    }
    double intensity(int p, int q) const {
        return intensities[static_cast<std::size_t>(p) * n_elev + q];
    }
};

/// Trace the full ray grid against the scene. Each ray stores its
/// closest-hit distance and shade/L (the 1/L weight keeps image
/// brightness independent of the elevation sampling density).
/// Rows are traced in parallel over n_threads (0 = auto); the static
/// row partition makes the result bit-identical for any thread count.
RayBuffers render_buffers(const Scene& scene, const RigidPose& pose,
                          const SonarIntrinsics& intr, int n_threads = 0);

/// True when the world point lies inside the sensor's angular FOV and
/// range window (bounds inclusive).
bool point_in_frustum(const SonarIntrinsics& intr, const RigidPose& pose,
                      const Vec3& p_world);

}  // namespace flsim
