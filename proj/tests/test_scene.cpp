#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "flsim/scene.hpp"
#include "test_support.hpp"

using namespace flsim;
using flsim::testing::Rng;
using flsim::testing::make_box_mesh;

namespace {

/// Writes `content` to a throwaway file and removes it on destruction.
struct TempFile {
    std::string path;

    explicit TempFile(const std::string& content, const char* name) {
        path = std::string("flsim_test_") + name;
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

const char* kCubeObj =
    "# unit cube\n"
    "v -0.5 -0.5 -0.5\nv 0.5 -0.5 -0.5\nv 0.5 0.5 -0.5\nv -0.5 0.5 -0.5\n"
    "v -0.5 -0.5 0.5\nv 0.5 -0.5 0.5\nv 0.5 0.5 0.5\nv -0.5 0.5 0.5\n"
    "f 1 4 3\nf 1 3 2\nf 5 6 7\nf 5 7 8\nf 1 2 6\nf 1 6 5\n"
    "f 2 3 7\nf 2 7 6\nf 3 4 8\nf 3 8 7\nf 4 1 5\nf 4 5 8\n";

}  // namespace

TEST_CASE("OBJ loader parses a unit cube into 12 triangles") {
    TempFile file(kCubeObj, "cube.obj");
    const Mesh mesh = load_obj(file.path);
    CHECK(mesh.vertices.size() == 8);
    CHECK(mesh.triangles.size() == 12);
    CHECK(mesh.normals.size() == 12);
    // All normals must point away from the cube center.
    for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
        const Vec3 centroid = (mesh.vertices[mesh.triangles[i][0]]
                               + mesh.vertices[mesh.triangles[i][1]]
                               + mesh.vertices[mesh.triangles[i][2]]) / 3.0;
        CHECK(dot(mesh.normals[i], centroid) > 0.0);
    }
    CHECK(mesh.bounds.lo.x == doctest::Approx(-0.5));
    CHECK(mesh.bounds.hi.z == doctest::Approx(0.5));
}

TEST_CASE("OBJ quad faces are fan-triangulated") {
    TempFile file("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n", "quad.obj");
    const Mesh mesh = load_obj(file.path);
    CHECK(mesh.triangles.size() == 2);
    const std::array<int, 3> first{0, 1, 2};
    const std::array<int, 3> second{0, 2, 3};
    CHECK(mesh.triangles[0] == first);
    CHECK(mesh.triangles[1] == second);
}

TEST_CASE("OBJ faces may carry texture/normal slots") {
    TempFile file("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1/1 2/2/1 3//1\n", "slots.obj");
    CHECK(load_obj(file.path).triangles.size() == 1);
}

TEST_CASE("OBJ errors carry the offending line") {
    SUBCASE("index 0 is invalid (indices are 1-based)") {
        TempFile file("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 0 1 2\n", "zeroidx.obj");
        CHECK_THROWS_WITH_AS(load_obj(file.path),
                             doctest::Contains("line 4"), std::invalid_argument);
    }
    SUBCASE("index beyond the vertex count") {
        TempFile file("v 0 0 0\nv 1 0 0\nf 1 2 9\n", "range.obj");
        CHECK_THROWS_WITH_AS(load_obj(file.path),
                             doctest::Contains("out of range"), std::invalid_argument);
    }
    SUBCASE("malformed vertex") {
        TempFile file("v 0 0\n", "badvert.obj");
        CHECK_THROWS_WITH_AS(load_obj(file.path),
                             doctest::Contains("line 1"), std::invalid_argument);
    }
    SUBCASE("degenerate face names its indices") {
        TempFile file("v 0 0 0\nv 1 0 0\nv 2 0 0\nf 1 2 3\n", "degen.obj");
        CHECK_THROWS_WITH_AS(load_obj(file.path),
                             doctest::Contains("degenerate"), std::invalid_argument);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_obj("no_such_file.obj"), std::invalid_argument);
    }
}

TEST_CASE("rectangle factory produces the requested plane normal") {
    const Mesh rect = make_rectangle_mesh({1.0, 2.0, 3.0}, {0.0, 0.0, 1.0}, 2.0, 1.0, {});
    CHECK(rect.triangles.size() == 2);
    for (const Vec3& n : rect.normals) {
        CHECK(n.z == doctest::Approx(1.0).epsilon(1e-12));
    }
    for (const Vec3& v : rect.vertices) CHECK(v.z == doctest::Approx(3.0));
}

TEST_CASE("mirroring a mesh reflects vertices and flips windings") {
    const Plane g{{0.0, 0.0, 1.0}, 0.0};
    const Mesh box = make_box_mesh({0.0, 0.0, 2.0}, {0.5, 0.5, 0.5}, {});
    const Mesh mirrored = mirror_mesh(box, g);

    SUBCASE("vertices are the exact reflections") {
        for (std::size_t i = 0; i < box.vertices.size(); ++i)
            CHECK(distance(mirrored.vertices[i],
                           mirror_across_plane(box.vertices[i], g)) == 0.0);
    }
    SUBCASE("normals are the reflected normals, not inverted ones") {
        for (std::size_t i = 0; i < box.normals.size(); ++i)
            CHECK(distance(mirrored.normals[i],
                           mirror_direction(box.normals[i], g)) < 1e-12);
    }
    SUBCASE("mirroring twice restores the mesh exactly") {
        const Mesh twice = mirror_mesh(mirrored, g);
        for (std::size_t i = 0; i < box.vertices.size(); ++i)
            CHECK(distance(twice.vertices[i], box.vertices[i]) < 1e-15);
        for (std::size_t i = 0; i < box.triangles.size(); ++i)
            CHECK(twice.triangles[i] == box.triangles[i]);
    }
    SUBCASE("a mesh lying in the plane keeps its vertex set") {
        const Mesh flat = make_rectangle_mesh({0.0, 0.0, 0.0}, {0.0, 0.0, 1.0},
                                              1.0, 1.0, {});
        const Mesh m = mirror_mesh(flat, g);
        for (std::size_t i = 0; i < flat.vertices.size(); ++i)
            CHECK(distance(m.vertices[i], flat.vertices[i]) < 1e-15);
    }
}

TEST_CASE("rigid transforms preserve shape") {
    Rng rng(505);
    const Mesh box = make_box_mesh({0.0, 0.0, 0.0}, {0.4, 0.3, 0.2}, {});
    for (int i = 0; i < 20; ++i) {
        const RigidPose pose = RigidPose::from_rpy(rng.point(-2.0, 2.0),
                                                   rng.uniform(-1.0, 1.0),
                                                   rng.uniform(-1.0, 1.0),
                                                   rng.uniform(-1.0, 1.0));
        const Mesh moved = transform_mesh(box, pose);
        CHECK(distance(moved.vertices[0], pose.to_world(box.vertices[0])) == 0.0);
        CHECK(distance(moved.vertices[6] - moved.vertices[0],
                       pose.rotate(box.vertices[6] - box.vertices[0])) < 1e-12);
    }
}

TEST_CASE("scene variants contain objects, ground, and exact mirrors") {
    Scene scene;
    scene.objects.push_back(make_box_mesh({2.0, 0.0, 0.5}, {0.2, 0.2, 0.2}, {}));
    scene.has_ground = true;
    scene.ground = flsim::testing::make_flat_ground();

    const SceneVariants v = build_scene_variants(scene);
    CHECK(v.objects_only.objects.size() == 1);
    CHECK(v.objects_and_ground.objects.size() == 2);
    CHECK(v.objects_and_mirror.objects.size() == 2);
    CHECK_FALSE(v.objects_and_mirror.has_ground);

    SUBCASE("two objects mirror into four meshes") {
        scene.objects.push_back(make_box_mesh({2.5, 0.5, 0.4}, {0.1, 0.1, 0.1}, {}));
        CHECK(build_scene_variants(scene).objects_and_mirror.objects.size() == 4);
    }
    SUBCASE("every mirrored vertex is the exact reflection of its source") {
        Rng rng(606);
        for (int trial = 0; trial < 100; ++trial) {
            Scene s;
            const int n = rng.pick(1, 3);
            for (int i = 0; i < n; ++i)
                s.objects.push_back(make_box_mesh(rng.point(-2.0, 2.0) + Vec3{0, 0, 4.0},
                                                  {rng.uniform(0.1, 0.5),
                                                   rng.uniform(0.1, 0.5),
                                                   rng.uniform(0.1, 0.5)}, {}));
            s.has_ground = true;
            s.ground = flsim::testing::make_flat_ground();
            const SceneVariants sv = build_scene_variants(s);
            for (std::size_t m = 0; m < s.objects.size(); ++m) {
                const Mesh& orig = sv.objects_only.objects[m];
                const Mesh& mir = sv.objects_and_mirror.objects[s.objects.size() + m];
                REQUIRE(orig.vertices.size() == mir.vertices.size());
                for (std::size_t k = 0; k < orig.vertices.size(); ++k)
                    CHECK(distance(mir.vertices[k],
                                   mirror_across_plane(orig.vertices[k],
                                                       s.ground.plane)) == 0.0);
            }
        }
    }
    SUBCASE("missing ground is an error") {
        Scene bare;
        bare.objects = scene.objects;
        CHECK_THROWS_AS(build_scene_variants(bare), std::invalid_argument);
    }
}

TEST_CASE("scene validation enforces ground coplanarity") {
    Scene scene;
    scene.has_ground = true;
    scene.ground = flsim::testing::make_flat_ground();
    CHECK_NOTHROW(scene.validate());
    scene.ground.mesh.vertices[0].z += 1e-6;
    scene.ground.mesh.finalize();
    CHECK_THROWS_AS(scene.validate(), std::invalid_argument);
}

TEST_CASE("material invariants are enforced") {
    CHECK_THROWS_AS((Material{1.5, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((Material{-0.1, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((Material{0.5, 0.0}.validate()), std::invalid_argument);
    CHECK_NOTHROW((Material{0.5, 2.0}.validate()));
}
