#pragma once

#include "flsim/imaging.hpp"
#include "flsim/scene.hpp"

namespace flsim {

/// How many reflection orders the composed image carries.
///   single            direct returns only
///   single_and_triple direct + ground-object-ground paths
///   full              direct + double (one ground reflection) + triple
enum class BounceMode { single, single_and_triple, full };

const char* to_string(BounceMode mode);

/// Every intermediate of the multipath composition, kept for inspection:
///   i_og      render of objects + ground
///   i_o       render of objects only
///   i_g       ground-only return, i_og - i_o
///   i_oo      render of objects + mirrored objects
///   i_mirror  mirrored-object return i_oo - i_o, i.e. the triple-bounce
///             image (after the ground-specular weight)
///   i_c23     double-bounce image accumulated at midpoint ranges (after
///             the ground-specular weight)
///   composed  mode-dependent sum, always (i_og + i_c23) + i_mirror in
///             that association order so the decomposition is exact
struct EchoComponents {
    PolarImage i_og, i_o, i_g, i_oo, i_mirror, i_c23;
    PolarImage composed;
};

struct EchoOptions {
    /// Specular reflectance of the ground, applied once per ground
    /// interaction: double-bounce energy is scaled by this factor,
    /// triple-bounce energy by its square. 1 leaves values untouched.
    double ground_specular = 1.0;
    int n_threads = 0;
};

/// Elementwise a - b clamped at zero. Negative residues beyond 1e-9 mean
/// the two images were not renders of nested scenes and raise an error.
PolarImage ground_component(const PolarImage& i_og, const PolarImage& i_o);

/// Same subtraction applied to the mirror-scene render: the remainder is
/// energy returned by mirrored geometry only. Its range bins already
/// hold the triple-bounce recorded range (half the full mirror path).
PolarImage case4_component(const PolarImage& i_oo, const PolarImage& i_o);

/// Double-bounce image. For each ray (p,q) where the mirror-scene
/// intensity exceeds the objects-only intensity, the excess is energy
/// that traveled sonar -> ground -> object. Its virtual endpoint is
/// reconstructed from the mirror-scene distance buffer, reflected back
/// above the ground, gated by the sensor frustum, and accumulated into
/// beam row p at the mean of the bounced and direct path lengths.
PolarImage case23_component(const RayBuffers& buffers_oo, const RayBuffers& buffers_o,
                            const RigidPose& pose, const Plane& ground,
                            const SonarIntrinsics& intr, int n_threads = 0);

/// Render the scene variants and assemble the composed image for the
/// requested mode. A scene without ground degrades gracefully: the
/// composed image equals the plain render and all echo components are
/// zero.
EchoComponents compose_ground_echo(const Scene& scene, const RigidPose& pose,
                                   const SonarIntrinsics& intr, BounceMode mode,
                                   const EchoOptions& options = {});

}  // namespace flsim
