#pragma once

#include "flsim/imaging.hpp"
#include "flsim/scene.hpp"

namespace flsim {

/// Output of the explicit multibounce tracer, split by reflection count.
/// two_bounce counts each ground/object path family once (the
/// time-reversed double-bounce pair carries one deposit, matching the
/// composition's additive model); the case2/case3 sub-images record the
/// two traversal orders separately so reciprocity can be asserted.
struct OracleImages {
    PolarImage one_bounce;      // direct backscatter (objects and ground)
    PolarImage two_bounce;      // one ground reflection + object backscatter
    PolarImage three_bounce;    // ground -> object -> ground paths
    PolarImage case2;           // traversal sonar->ground->object->sonar
    PolarImage case3;           // traversal sonar->object->ground->sonar

    /// one_bounce + two_bounce + three_bounce (in that order).
    PolarImage total() const;
    /// one_bounce + three_bounce, the no-double-bounce approximation.
    PolarImage total_without_double() const;
};

/// Reference tracer for validating the mirror composition: follows each
/// grid ray explicitly, reflecting specularly at the analytic ground
/// plane and backscattering diffusely at object surfaces. Deliberately
/// serial and unaccelerated. max_bounces must be 1, 2, or 3.
///
/// Per ray, with O the sonar center:
///  - 1 bounce: closest hit over the whole scene, binned at its range —
///    bit-identical to the render/binning pipeline on the same scene.
///  - ground-first paths: if the ray reaches the plane before any
///    object, it reflects there (direction mirrored) and may hit an
///    object at A. Distance attenuation uses the full outbound path.
///    * 3 bounces: the return retraces the outbound path, so the
///      recorded range is half the round trip = the outbound length.
///    * 2 bounces: the return is the direct segment A->O, accepted only
///      if unoccluded and A lies in the sensor frustum; recorded range
///      is the mean of outbound and direct lengths. The reversed
///      traversal (direct out, ground-reflected back) is constructed
///      with its own plane crossing and must agree to 1e-9.
/// Internal consistency failures (path-length symmetry, reciprocity)
/// throw std::logic_error.
OracleImages trace_multibounce(const Scene& scene, const RigidPose& pose,
                               const SonarIntrinsics& intr, int max_bounces);

}  // namespace flsim
