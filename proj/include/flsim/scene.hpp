#pragma once

#include <array>
#include <string>
#include <vector>

#include "flsim/geometry.hpp"

namespace flsim {

/// Surface response parameters: diffuse reflectance in [0,1] plus the
/// dimensionless source/beam constant applied at shading time.
struct Material {
    double albedo = 0.4;
    double source_strength = 1.0;

    void validate() const;
};

/// Default albedos: rough sea floor / concrete versus smoother man-made
/// object surfaces.
inline constexpr double kGroundAlbedo = 0.8;
inline constexpr double kObjectAlbedo = 0.4;

struct Aabb {
    Vec3 lo { 1e300,  1e300,  1e300};
    Vec3 hi {-1e300, -1e300, -1e300};

    void expand(const Vec3& p);
    bool valid() const { return lo.x <= hi.x; }
};

/// Indexed triangle mesh with one material. Per-triangle unit normals
/// (derived from winding) and the bounding box are filled in by
/// finalize(); call it after any direct edit.
struct Mesh {
    std::string name;
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;
    Material material;

    std::vector<Vec3> normals;   // per triangle, unit, from winding
    Aabb bounds;

    /// Validates indices, recomputes normals/bounds. Throws
    /// std::invalid_argument naming the offending face if an index is
    /// out of range or a triangle is degenerate (area <= 1e-12).
    void finalize();
};

/// Parse the v/f subset of Wavefront OBJ. Faces with more than three
/// vertices are fan-triangulated around their first vertex. Indices are
/// 1-based; vertex order is preserved. Errors carry the line number.
Mesh load_obj(const std::string& path, const Material& material = {});

/// Rectangle centered at `center` in the plane with the given unit
/// normal, split into two triangles wound so their normals equal
/// `normal`. Half extents are measured along a deterministic in-plane
/// basis (derived from the coordinate axis least aligned with the
/// normal).
Mesh make_rectangle_mesh(const Vec3& center, const Vec3& normal,
                         double half_extent_u, double half_extent_v,
                         const Material& material = {});

/// Reflect every vertex across the plane and flip triangle windings so
/// outward normals are mirrored too (reflection alone would turn the
/// mesh inside out).
Mesh mirror_mesh(const Mesh& mesh, const Plane& plane);

Mesh transform_mesh(const Mesh& mesh, const RigidPose& pose);

/// Ground is carried twice: as an analytic plane (for mirroring) and as
/// a finite rectangle mesh (for its diffuse return when rendered).
struct Ground {
    Plane plane;
    Mesh mesh;
};

struct Scene {
    std::vector<Mesh> objects;
    bool has_ground = false;
    Ground ground;

    /// Checks the ground mesh is coplanar with the analytic plane
    /// (vertex signed distances within 1e-9) and its normals match.
    void validate() const;
};

/// The three single-bounce render inputs used for multipath
/// composition: objects+ground, objects only, objects+mirrored objects.
struct SceneVariants {
    Scene objects_and_ground;   // S1
    Scene objects_only;         // S2
    Scene objects_and_mirror;   // S3
};

/// Build S1..S3 from one scene. Requires scene.has_ground. Mirrored
/// copies keep each object's material and are appended after the
/// originals in S3, so S2's mesh list is a prefix of both S1's and
/// S3's.
SceneVariants build_scene_variants(const Scene& scene);

}  // namespace flsim
