#include "flsim/raytracer.hpp"

#include <cmath>
#include <stdexcept>

#include "flsim/parallel.hpp"

namespace flsim {

namespace {

constexpr double kRayEps = 1e-9;       // reject grazing self-intersections
constexpr double kDetEps = 1e-14;      // treat smaller determinants as parallel

/// Conservative slab test; used only to skip whole meshes, so a false
/// positive is harmless and a false negative must not happen.
bool ray_hits_aabb(const Vec3& o, const Vec3& d, const Aabb& b) {
    double t0 = 0.0;
    double t1 = std::numeric_limits<double>::infinity();
    const double olo[3] = {b.lo.x - o.x, b.lo.y - o.y, b.lo.z - o.z};
    const double ohi[3] = {b.hi.x - o.x, b.hi.y - o.y, b.hi.z - o.z};
    const double dir[3] = {d.x, d.y, d.z};
    for (int axis = 0; axis < 3; ++axis) {
        if (std::abs(dir[axis]) < 1e-300) {
            if (olo[axis] > 0.0 || ohi[axis] < 0.0) return false;
            continue;
        }
        const double inv = 1.0 / dir[axis];
        double ta = olo[axis] * inv;
        double tb = ohi[axis] * inv;
        if (ta > tb) std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
        if (t0 > t1) return false;
    }
    return true;
}

}  // namespace

void SonarIntrinsics::validate() const {
    if (n_beams < 1 || n_elev_samples < 1 || n_range_bins < 1)
        throw std::invalid_argument("SonarIntrinsics: counts must be >= 1");
    if (!(r_min < r_max))
        throw std::invalid_argument("SonarIntrinsics: need r_min < r_max");
    if (!(r_res > 0.0))
        throw std::invalid_argument("SonarIntrinsics: range resolution must be positive");
    if (!(azimuth_fov > 0.0) || azimuth_fov >= kPi
        || !(elevation_fov > 0.0) || elevation_fov >= kPi)
        throw std::invalid_argument("SonarIntrinsics: FOVs must lie in (0, pi)");
    const int expect = static_cast<int>(std::ceil((r_max - r_min) / r_res - 1e-9));
    if (n_range_bins != expect)
        throw std::invalid_argument("SonarIntrinsics: n_range_bins ("
                                    + std::to_string(n_range_bins)
                                    + ") does not match ceil((r_max - r_min)/r_res) ("
                                    + std::to_string(expect) + ")");
}

SonarIntrinsics make_intrinsics_bins(int n_beams, int n_elev_samples,
                                     double azimuth_fov, double elevation_fov,
                                     double r_min, double r_max, int n_range_bins,
                                     bool tvg_enabled) {
    SonarIntrinsics intr;
    intr.n_beams = n_beams;
    intr.n_elev_samples = n_elev_samples;
    intr.azimuth_fov = azimuth_fov;
    intr.elevation_fov = elevation_fov;
    intr.r_min = r_min;
    intr.r_max = r_max;
    intr.n_range_bins = n_range_bins;
    intr.r_res = (n_range_bins > 0) ? (r_max - r_min) / n_range_bins : 0.0;
    intr.tvg_enabled = tvg_enabled;
    intr.validate();
    return intr;
}

SonarIntrinsics make_intrinsics_res(int n_beams, int n_elev_samples,
                                    double azimuth_fov, double elevation_fov,
                                    double r_min, double r_max, double r_res,
                                    bool tvg_enabled) {
    SonarIntrinsics intr;
    intr.n_beams = n_beams;
    intr.n_elev_samples = n_elev_samples;
    intr.azimuth_fov = azimuth_fov;
    intr.elevation_fov = elevation_fov;
    intr.r_min = r_min;
    intr.r_max = r_max;
    intr.r_res = r_res;
    if (r_res > 0.0 && r_max > r_min)
        intr.n_range_bins = static_cast<int>(std::ceil((r_max - r_min) / r_res - 1e-9));
    intr.tvg_enabled = tvg_enabled;
    intr.validate();
    return intr;
}

SonarIntrinsics aris3000_like() {
    return make_intrinsics_bins(128, 256, deg_to_rad(30.0), deg_to_rad(14.0),
                                1.0, 6.0, 1288, true);
}

RayGrid generate_rays(const SonarIntrinsics& intr, const RigidPose& pose) {
    intr.validate();
    RayGrid grid;
    grid.origin = pose.translation;
    grid.n_beams = intr.n_beams;
    grid.n_elev = intr.n_elev_samples;
    grid.directions.reserve(static_cast<std::size_t>(intr.n_beams) * intr.n_elev_samples);
    for (int p = 0; p < intr.n_beams; ++p) {
        const double theta = intr.beam_azimuth(p);
        for (int q = 0; q < intr.n_elev_samples; ++q) {
            const double phi = intr.sample_elevation(q);
            grid.directions.push_back(pose.rotate(spherical_to_cartesian({1.0, theta, phi})));
        }
    }
    return grid;
}

bool ray_triangle_intersect(const Vec3& orig, const Vec3& dir,
                            const Vec3& v0, const Vec3& v1, const Vec3& v2,
                            double& t_out) {
    const Vec3 e1 = v1 - v0;
    const Vec3 e2 = v2 - v0;
    const Vec3 pvec = cross(dir, e2);
    const double det = dot(e1, pvec);
    if (std::abs(det) < kDetEps) return false;
    const double inv_det = 1.0 / det;
    const Vec3 tvec = orig - v0;
    const double u = dot(tvec, pvec) * inv_det;
    if (u < 0.0 || u > 1.0) return false;
    const Vec3 qvec = cross(tvec, e1);
    const double v = dot(dir, qvec) * inv_det;
    if (v < 0.0 || u + v > 1.0) return false;
    const double t = dot(e2, qvec) * inv_det;
    if (t <= kRayEps) return false;
    t_out = t;
    return true;
}

namespace {

void intersect_mesh(const Vec3& origin, const Vec3& dir, const Mesh& mesh,
                    double& best_t, const Mesh*& best_mesh, std::size_t& best_tri) {
    if (!mesh.bounds.valid() || !ray_hits_aabb(origin, dir, mesh.bounds)) return;
    for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
        const auto& tri = mesh.triangles[i];
        double t = 0.0;
        if (ray_triangle_intersect(origin, dir,
                                   mesh.vertices[static_cast<std::size_t>(tri[0])],
                                   mesh.vertices[static_cast<std::size_t>(tri[1])],
                                   mesh.vertices[static_cast<std::size_t>(tri[2])], t)
            && t < best_t) {
            best_t = t;
            best_mesh = &mesh;
            best_tri = i;
        }
    }
}

}  // namespace

std::optional<Hit> closest_hit(const Vec3& origin, const Vec3& dir, const Scene& scene) {
    double best_t = std::numeric_limits<double>::infinity();
    const Mesh* best_mesh = nullptr;
    std::size_t best_tri = 0;
    for (const Mesh& mesh : scene.objects)
        intersect_mesh(origin, dir, mesh, best_t, best_mesh, best_tri);
    if (scene.has_ground)
        intersect_mesh(origin, dir, scene.ground.mesh, best_t, best_mesh, best_tri);
    if (!best_mesh) return std::nullopt;
    Hit hit;
    hit.distance = best_t;
    hit.point = origin + best_t * dir;
    hit.normal = best_mesh->normals[best_tri];
    hit.material = &best_mesh->material;
    return hit;
}

double shade(const Hit& hit, const Vec3& ray_dir, bool tvg_enabled) {
    const double cos_alpha = dot(hit.normal, -ray_dir);
    if (cos_alpha <= 0.0) return 0.0;       // back-facing; +0.0 on purpose
    const double spreading = tvg_enabled ? 1.0 : 1.0 / (hit.distance * hit.distance);
    return hit.material->source_strength * spreading * hit.material->albedo * cos_alpha;
}

RayBuffers render_buffers(const Scene& scene, const RigidPose& pose,
                          const SonarIntrinsics& intr, int n_threads) {
    pose.validate();
    const RayGrid grid = generate_rays(intr, pose);

    RayBuffers out;
    out.n_beams = intr.n_beams;
    out.n_elev = intr.n_elev_samples;
    const std::size_t n = static_cast<std::size_t>(intr.n_beams) * intr.n_elev_samples;
    out.distances.assign(n, RayBuffers::kNoHit);
    out.intensities.assign(n, 0.0);

    const double elev_samples = static_cast<double>(intr.n_elev_samples);
    parallel_rows(intr.n_beams, n_threads, [&](int p) {
        for (int q = 0; q < intr.n_elev_samples; ++q) {
            const std::size_t idx = static_cast<std::size_t>(p) * intr.n_elev_samples + q;
            const Vec3& dir = grid.directions[idx];
            if (const auto hit = closest_hit(grid.origin, dir, scene)) {
                out.distances[idx] = hit->distance;
                out.intensities[idx] = shade(*hit, dir, intr.tvg_enabled) / elev_samples;
            }
        }
    });
    return out;
}

bool point_in_frustum(const SonarIntrinsics& intr, const RigidPose& pose,
                      const Vec3& p_world) {
    const Vec3 local = pose.to_local(p_world);
    const double r = norm(local);
    if (r < intr.r_min || r > intr.r_max || r == 0.0) return false;
    const SphericalPoint s = cartesian_to_spherical(local);
    return std::abs(s.theta) <= 0.5 * intr.azimuth_fov
        && std::abs(s.phi) <= 0.5 * intr.elevation_fov;
}

}  // namespace flsim
