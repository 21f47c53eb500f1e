#include "flsim/scene.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace flsim {

void Material::validate() const {
    if (albedo < 0.0 || albedo > 1.0)
        throw std::invalid_argument("Material: albedo must lie in [0,1]");
    if (!(source_strength > 0.0))
        throw std::invalid_argument("Material: source_strength must be positive");
}

void Aabb::expand(const Vec3& p) {
    lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y); lo.z = std::min(lo.z, p.z);
    hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y); hi.z = std::max(hi.z, p.z);
}

void Mesh::finalize() {
    material.validate();
    normals.assign(triangles.size(), Vec3{});
    bounds = Aabb{};
    const int n_vertices = static_cast<int>(vertices.size());
    for (std::size_t i = 0; i < triangles.size(); ++i) {
        const auto& t = triangles[i];
        for (int k : t) {
            if (k < 0 || k >= n_vertices) {
                std::ostringstream msg;
                msg << "Mesh '" << name << "': face " << i << " (" << t[0] << "," << t[1]
                    << "," << t[2] << ") references vertex " << k << " out of range";
                throw std::invalid_argument(msg.str());
            }
        }
        const Vec3& a = vertices[static_cast<std::size_t>(t[0])];
        const Vec3& b = vertices[static_cast<std::size_t>(t[1])];
        const Vec3& c = vertices[static_cast<std::size_t>(t[2])];
        const Vec3 cr = cross(b - a, c - a);
        const double area = 0.5 * norm(cr);
        if (area <= 1e-12) {
            std::ostringstream msg;
            msg << "Mesh '" << name << "': face " << i << " (" << t[0] << "," << t[1]
                << "," << t[2] << ") is degenerate (area " << area << " m^2)";
            throw std::invalid_argument(msg.str());
        }
        normals[i] = normalized(cr);
        bounds.expand(a);
        bounds.expand(b);
        bounds.expand(c);
    }
}

Mesh load_obj(const std::string& path, const Material& material) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_obj: cannot open '" + path + "'");

    Mesh mesh;
    mesh.name = path;
    mesh.material = material;

    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;            // blank line
        if (tag[0] == '#') continue;
        if (tag == "v") {
            Vec3 v;
            if (!(ls >> v.x >> v.y >> v.z)) {
                throw std::invalid_argument("load_obj: '" + path + "' line "
                                            + std::to_string(line_no) + ": malformed vertex");
            }
            mesh.vertices.push_back(v);
        } else if (tag == "f") {
            std::vector<int> idx;
            std::string token;
            while (ls >> token) {
                // Accept "i", "i/t", "i/t/n", "i//n"; only the vertex index is used.
                const std::size_t slash = token.find('/');
                const std::string head = (slash == std::string::npos) ? token : token.substr(0, slash);
                long v = 0;
                try {
                    v = std::stol(head);
                } catch (const std::exception&) {
                    throw std::invalid_argument("load_obj: '" + path + "' line "
                                                + std::to_string(line_no)
                                                + ": bad face index '" + token + "'");
                }
                if (v < 1 || v > static_cast<long>(mesh.vertices.size())) {
                    throw std::invalid_argument("load_obj: '" + path + "' line "
                                                + std::to_string(line_no) + ": face index "
                                                + std::to_string(v) + " out of range (1.."
                                                + std::to_string(mesh.vertices.size()) + ")");
                }
                idx.push_back(static_cast<int>(v) - 1);
            }
            if (idx.size() < 3) {
                throw std::invalid_argument("load_obj: '" + path + "' line "
                                            + std::to_string(line_no)
                                            + ": face needs at least 3 vertices");
            }
            for (std::size_t k = 1; k + 1 < idx.size(); ++k)
                mesh.triangles.push_back({idx[0], idx[k], idx[k + 1]});
        }
        // Other tags (vn, vt, usemtl, o, g, s, mtllib, ...) are ignored.
    }
    mesh.finalize();
    return mesh;
}

Mesh make_rectangle_mesh(const Vec3& center, const Vec3& normal,
                         double half_extent_u, double half_extent_v,
                         const Material& material) {
    const Vec3 n = normalized(normal);
    // Deterministic in-plane basis: seed with the coordinate axis least
    // aligned with the normal.
    const double ax = std::abs(n.x), ay = std::abs(n.y), az = std::abs(n.z);
    Vec3 seed {1, 0, 0};
    if (ay <= ax && ay <= az) seed = {0, 1, 0};
    else if (az <= ax && az <= ay) seed = {0, 0, 1};
    const Vec3 u = normalized(cross(seed, n));
    const Vec3 v = cross(n, u);

    Mesh mesh;
    mesh.name = "rectangle";
    mesh.material = material;
    mesh.vertices = {
        center - half_extent_u * u - half_extent_v * v,
        center + half_extent_u * u - half_extent_v * v,
        center + half_extent_u * u + half_extent_v * v,
        center - half_extent_u * u + half_extent_v * v,
    };
    mesh.triangles = {{0, 1, 2}, {0, 2, 3}};
    mesh.finalize();
    return mesh;
}

Mesh mirror_mesh(const Mesh& mesh, const Plane& plane) {
    Mesh out;
    out.name = mesh.name + "_mirrored";
    out.material = mesh.material;
    out.vertices.reserve(mesh.vertices.size());
    for (const Vec3& v : mesh.vertices)
        out.vertices.push_back(mirror_across_plane(v, plane));
    out.triangles.reserve(mesh.triangles.size());
    // Swap the last two indices so windings still face "outward" after
    // the reflection.
    for (const auto& t : mesh.triangles)
        out.triangles.push_back({t[0], t[2], t[1]});
    out.finalize();
    return out;
}

Mesh transform_mesh(const Mesh& mesh, const RigidPose& pose) {
    Mesh out;
    out.name = mesh.name;
    out.material = mesh.material;
    out.triangles = mesh.triangles;
    out.vertices.reserve(mesh.vertices.size());
    for (const Vec3& v : mesh.vertices)
        out.vertices.push_back(pose.to_world(v));
    out.finalize();
    return out;
}

void Scene::validate() const {
    if (!has_ground) return;
    ground.plane.validate();
    for (std::size_t i = 0; i < ground.mesh.vertices.size(); ++i) {
        if (std::abs(ground.plane.signed_distance(ground.mesh.vertices[i])) > 1e-9) {
            throw std::invalid_argument("Scene: ground mesh vertex " + std::to_string(i)
                                        + " is not on the ground plane");
        }
    }
    for (std::size_t i = 0; i < ground.mesh.normals.size(); ++i) {
        if (norm(ground.mesh.normals[i] - ground.plane.normal) > 1e-9) {
            throw std::invalid_argument("Scene: ground mesh face " + std::to_string(i)
                                        + " normal disagrees with the ground plane normal");
        }
    }
}

SceneVariants build_scene_variants(const Scene& scene) {
    if (!scene.has_ground)
        throw std::invalid_argument("build_scene_variants: scene has no ground");
    scene.validate();

    SceneVariants v;

    v.objects_only.objects = scene.objects;

    v.objects_and_ground.objects = scene.objects;
    v.objects_and_ground.objects.push_back(scene.ground.mesh);

    v.objects_and_mirror.objects = scene.objects;
    for (const Mesh& m : scene.objects)
        v.objects_and_mirror.objects.push_back(mirror_mesh(m, scene.ground.plane));

    return v;
}

}  // namespace flsim
