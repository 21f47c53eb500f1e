#include "flsim/echo.hpp"

#include <cmath>
#include <stdexcept>

#include "flsim/parallel.hpp"
#include "flsim/raytracer.hpp"

namespace flsim {

const char* to_string(BounceMode mode) {
    switch (mode) {
        case BounceMode::single: return "single";
        case BounceMode::single_and_triple: return "triple";
        case BounceMode::full: return "full";
    }
    return "unknown";
}

namespace {

PolarImage subtract_nested(const PolarImage& a, const PolarImage& b, const char* what) {
    if (a.n_beams() != b.n_beams() || a.n_bins() != b.n_bins())
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
    PolarImage out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        if (d < -1e-9)
            throw std::invalid_argument(std::string(what)
                + ": negative residue " + std::to_string(d)
                + " — images are not renders of nested scenes");
        // Tiny negatives are rounding residue; write +0.0, not -0.0.
        out.values[i] = (d <= 0.0) ? 0.0 : d;
    }
    return out;
}

}  // namespace

PolarImage ground_component(const PolarImage& i_og, const PolarImage& i_o) {
    return subtract_nested(i_og, i_o, "ground_component");
}

PolarImage case4_component(const PolarImage& i_oo, const PolarImage& i_o) {
    return subtract_nested(i_oo, i_o, "case4_component");
}

PolarImage case23_component(const RayBuffers& buffers_oo, const RayBuffers& buffers_o,
                            const RigidPose& pose, const Plane& ground,
                            const SonarIntrinsics& intr, int n_threads) {
    if (buffers_oo.n_beams != buffers_o.n_beams || buffers_oo.n_elev != buffers_o.n_elev)
        throw std::invalid_argument("case23_component: buffer dimension mismatch");
    if (buffers_oo.n_beams != intr.n_beams || buffers_oo.n_elev != intr.n_elev_samples)
        throw std::invalid_argument("case23_component: buffers do not match intrinsics");
    ground.validate();

    PolarImage img = zeros_like(intr);
    const RayGrid grid = generate_rays(intr, pose);
    const double bins = static_cast<double>(intr.n_range_bins);

    parallel_rows(intr.n_beams, n_threads, [&](int p) {
        for (int q = 0; q < intr.n_elev_samples; ++q) {
            const double excess = buffers_oo.intensity(p, q) - buffers_o.intensity(p, q);
            if (!(excess > 0.0)) continue;
            const double dist_mirror = buffers_oo.distance(p, q);
            const Vec3 mirror_point = grid.origin + dist_mirror * grid.direction(p, q);
            const Vec3 bounce_point = mirror_across_plane(mirror_point, ground);
            if (!point_in_frustum(intr, pose, bounce_point)) continue;
            const double dist_direct = distance(grid.origin, bounce_point);
            const double r = 0.5 * (dist_direct + dist_mirror);
            const double d = std::floor((r - intr.r_min) / intr.r_res);
            if (d >= 0.0 && d < bins)
                img.at(p, static_cast<int>(d)) += excess;
        }
    });
    return img;
}

EchoComponents compose_ground_echo(const Scene& scene, const RigidPose& pose,
                                   const SonarIntrinsics& intr, BounceMode mode,
                                   const EchoOptions& options) {
    if (!(options.ground_specular >= 0.0 && options.ground_specular <= 1.0))
        throw std::invalid_argument("compose_ground_echo: ground_specular must be in [0,1]");

    EchoComponents ec;

    if (!scene.has_ground) {
        // Degenerate case: no ground means no echo paths. The plain
        // render doubles as i_og and i_o; every component is zero.
        const RayBuffers plain = render_buffers(scene, pose, intr, options.n_threads);
        ec.i_og = form_acoustic_image(plain, intr, options.n_threads);
        ec.i_o = ec.i_og;
        ec.i_g = zeros_like(intr);
        ec.i_oo = ec.i_o;
        ec.i_mirror = zeros_like(intr);
        ec.i_c23 = zeros_like(intr);
        ec.composed = add_images(add_images(ec.i_og, ec.i_c23), ec.i_mirror);
        return ec;
    }

    const SceneVariants variants = build_scene_variants(scene);
    const int threads = options.n_threads;

    const RayBuffers buf_og = render_buffers(variants.objects_and_ground, pose, intr, threads);
    const RayBuffers buf_o = render_buffers(variants.objects_only, pose, intr, threads);
    ec.i_og = form_acoustic_image(buf_og, intr, threads);
    ec.i_o = form_acoustic_image(buf_o, intr, threads);
    ec.i_g = ground_component(ec.i_og, ec.i_o);

    if (mode == BounceMode::single) {
        ec.i_oo = ec.i_o;
        ec.i_mirror = zeros_like(intr);
        ec.i_c23 = zeros_like(intr);
    } else {
        const RayBuffers buf_oo = render_buffers(variants.objects_and_mirror, pose, intr, threads);
        ec.i_oo = form_acoustic_image(buf_oo, intr, threads);
        ec.i_mirror = case4_component(ec.i_oo, ec.i_o);
        ec.i_c23 = (mode == BounceMode::full)
            ? case23_component(buf_oo, buf_o, pose, scene.ground.plane, intr, threads)
            : zeros_like(intr);

        const double specular = options.ground_specular;
        if (specular != 1.0) {
            // One ground interaction for double bounces, two for triple.
            ec.i_c23 = scale_image(ec.i_c23, specular);
            ec.i_mirror = scale_image(ec.i_mirror, specular * specular);
        }
    }

    ec.composed = add_images(add_images(ec.i_og, ec.i_c23), ec.i_mirror);
    return ec;
}

}  // namespace flsim
