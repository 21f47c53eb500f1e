#include "flsim/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "flsim/raytracer.hpp"

namespace flsim {

PolarImage OracleImages::total() const {
    return add_images(add_images(one_bounce, two_bounce), three_bounce);
}

PolarImage OracleImages::total_without_double() const {
    return add_images(one_bounce, three_bounce);
}

namespace {

void deposit(PolarImage& img, int p, double range, double intensity) {
    const SonarIntrinsics& intr = img.intrinsics;
    const double d = std::floor((range - intr.r_min) / intr.r_res);
    if (d >= 0.0 && d < static_cast<double>(intr.n_range_bins))
        img.at(p, static_cast<int>(d)) += intensity;
}

}  // namespace

OracleImages trace_multibounce(const Scene& scene, const RigidPose& pose,
                               const SonarIntrinsics& intr, int max_bounces) {
    if (max_bounces < 1 || max_bounces > 3)
        throw std::invalid_argument("trace_multibounce: max_bounces must be 1, 2, or 3");
    pose.validate();
    scene.validate();

    OracleImages out;
    out.one_bounce = zeros_like(intr);
    out.two_bounce = zeros_like(intr);
    out.three_bounce = zeros_like(intr);
    out.case2 = zeros_like(intr);
    out.case3 = zeros_like(intr);

    Scene objects_only;
    objects_only.objects = scene.objects;

    const RayGrid grid = generate_rays(intr, pose);
    const Vec3 origin = grid.origin;
    const double elev_samples = static_cast<double>(intr.n_elev_samples);
    const bool bounce_enabled = max_bounces >= 2 && scene.has_ground;
    const Plane& ground = scene.ground.plane;

    for (int p = 0; p < intr.n_beams; ++p) {
        for (int q = 0; q < intr.n_elev_samples; ++q) {
            const Vec3& u = grid.direction(p, q);

            // Direct return: same calls in the same order as the
            // render/binning pipeline, so the image matches it bitwise.
            if (const auto hit = closest_hit(origin, u, scene)) {
                deposit(out.one_bounce, p, hit->distance,
                        shade(*hit, u, intr.tvg_enabled) / elev_samples);
            }

            if (!bounce_enabled) continue;

            // Ground-first leg: the ray must reach the plane before any
            // object. (Objects sit on one side of the plane, so an
            // object hit past the crossing cannot occur.)
            const double denom = dot(ground.normal, u);
            if (std::abs(denom) < 1e-12) continue;
            const double t_ground = -ground.signed_distance(origin) / denom;
            if (t_ground <= 1e-9) continue;
            if (const auto blocker = closest_hit(origin, u, objects_only);
                blocker && blocker->distance <= t_ground)
                continue;

            const Vec3 ground_point = origin + t_ground * u;
            const Vec3 v = mirror_direction(u, ground);
            const auto bounce = closest_hit(ground_point, v, objects_only);
            if (!bounce) continue;

            const Vec3 target = bounce->point;                      // A
            const double outbound = t_ground + bounce->distance;    // |O->G->A|

            // Specular reflection must preserve the mirror path lengths.
            const Vec3 origin_mirrored = mirror_across_plane(origin, ground);
            const Vec3 target_mirrored = mirror_across_plane(target, ground);
            if (std::abs(outbound - distance(origin_mirrored, target)) > 1e-9
                || std::abs(outbound - distance(origin, target_mirrored)) > 1e-9)
                throw std::logic_error("trace_multibounce: ground reflection broke "
                                       "path-length symmetry");

            // Spreading loss over the full outbound path; the return
            // legs are accounted by the monostatic half-range bookkeeping.
            Hit attenuated = *bounce;
            attenuated.distance = outbound;
            const double intensity = shade(attenuated, v, intr.tvg_enabled) / elev_samples;

            if (max_bounces >= 3)
                deposit(out.three_bounce, p, outbound, intensity);

            // Double bounce, outward traversal (ground first): returns
            // straight from A, if the segment is clear and A is inside
            // the sensor's field of view and range window.
            const double direct = distance(target, origin);
            if (direct <= 1e-9) continue;
            const Vec3 w = (origin - target) / direct;
            if (const auto blocker = closest_hit(target, w, objects_only);
                blocker && blocker->distance < direct - 1e-9)
                continue;
            if (!point_in_frustum(intr, pose, target)) continue;

            deposit(out.case2, p, 0.5 * (direct + outbound), intensity);
            deposit(out.two_bounce, p, 0.5 * (direct + outbound), intensity);

            // Reversed traversal (object first, ground on the way back):
            // recompute its ground crossing from scratch and hold it to
            // the same total length before depositing.
            const double sd_target = ground.signed_distance(target);
            const double sd_mirror = ground.signed_distance(origin_mirrored);
            const double f = sd_target / (sd_target - sd_mirror);
            const Vec3 crossing = target + f * (origin_mirrored - target);
            const double back = distance(target, crossing) + distance(crossing, origin);
            if (std::abs(back - outbound) > 1e-9)
                throw std::logic_error("trace_multibounce: reversed double-bounce "
                                       "path length mismatch");
            deposit(out.case3, p, 0.5 * (direct + back), intensity);
        }
    }
    return out;
}

}  // namespace flsim
