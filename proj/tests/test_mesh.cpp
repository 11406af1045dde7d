#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "curvegait/adjacency.hpp"
#include "curvegait/mesh.hpp"
#include "curvegait/mesh_io.hpp"
#include "curvegait/primitives.hpp"

using namespace curvegait;

namespace {

TriangleMesh tetrahedron() {
    TriangleMesh m;
    m.vertices = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    m.triangles = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
    return m;
}

TriangleMesh unit_tetrahedron() {
    // Regular tetrahedron with unit edge length.
    TriangleMesh m = tetrahedron();
    double s = 1.0 / (2.0 * std::sqrt(2.0));
    for (Vec3& v : m.vertices) v *= s;
    return m;
}

}  // namespace

TEST_CASE("obj: minimal file") {
    LoadedMesh lm = load_mesh("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n", MeshFormat::Obj);
    CHECK(lm.mesh.vertex_count() == 3);
    REQUIRE(lm.mesh.triangle_count() == 1);
    CHECK(lm.mesh.triangles[0] == Triangle{0, 1, 2});
    CHECK(lm.colors.empty());
}

TEST_CASE("obj: index out of range") {
    CHECK_THROWS_AS(load_mesh("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 9\n", MeshFormat::Obj),
                    std::runtime_error);
}

TEST_CASE("obj: short face and malformed number") {
    CHECK_THROWS(load_mesh("v 0 0 0\nv 1 0 0\nf 1 2\n", MeshFormat::Obj));
    CHECK_THROWS(load_mesh("v 0 0 zero\n", MeshFormat::Obj));
}

TEST_CASE("obj: quad fans from the first vertex, comments ignored") {
    LoadedMesh lm = load_mesh("# quad\nv 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n",
                              MeshFormat::Obj);
    REQUIRE(lm.mesh.triangle_count() == 2);
    CHECK(lm.mesh.triangles[0] == Triangle{0, 1, 2});
    CHECK(lm.mesh.triangles[1] == Triangle{0, 2, 3});
}

TEST_CASE("obj: single triangle output is 3 v lines + 1 f line") {
    TriangleMesh m;
    m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    m.triangles = {{0, 1, 2}};
    std::string text = save_mesh(m, MeshFormat::Obj);
    int v_lines = 0, f_lines = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl - pos);
        if (line.rfind("v ", 0) == 0) ++v_lines;
        if (line.rfind("f ", 0) == 0) ++f_lines;
        pos = nl + 1;
    }
    CHECK(v_lines == 3);
    CHECK(f_lines == 1);
}

TEST_CASE("ply: colored header declares uchar red/green/blue") {
    TriangleMesh m;
    m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    m.triangles = {{0, 1, 2}};
    std::vector<Rgb> colors(3, Rgb{255, 0, 0});
    std::string bytes = save_mesh(m, MeshFormat::Ply, &colors);
    std::string header = bytes.substr(0, bytes.find("end_header"));
    CHECK(header.find("format binary_little_endian") != std::string::npos);
    CHECK(header.find("property uchar red") != std::string::npos);
    CHECK(header.find("property uchar green") != std::string::npos);
    CHECK(header.find("property uchar blue") != std::string::npos);

    LoadedMesh back = load_mesh(bytes, MeshFormat::Ply);
    REQUIRE(back.colors.size() == 3);
    CHECK(back.colors[0] == Rgb{255, 0, 0});
}

TEST_CASE("round-trip: icosphere through obj and ply") {
    TriangleMesh sphere = icosphere(3);  // 642 vertices
    CHECK(sphere.vertex_count() == 642);

    for (MeshFormat format : {MeshFormat::Obj, MeshFormat::Ply}) {
        LoadedMesh back = load_mesh(save_mesh(sphere, format), format);
        REQUIRE(back.mesh.vertex_count() == sphere.vertex_count());
        REQUIRE(back.mesh.triangles == sphere.triangles);  // connectivity bit-exact
        double worst = 0.0;
        for (std::size_t v = 0; v < sphere.vertex_count(); ++v)
            worst = std::max(worst, distance(back.mesh.vertices[v], sphere.vertices[v]));
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("round-trip: colors preserved exactly") {
    TriangleMesh sphere = icosphere(2);
    std::vector<Rgb> colors;
    for (std::size_t v = 0; v < sphere.vertex_count(); ++v)
        colors.push_back({static_cast<std::uint8_t>(v % 256), static_cast<std::uint8_t>(v % 97),
                          static_cast<std::uint8_t>(v % 31)});
    for (MeshFormat format : {MeshFormat::Obj, MeshFormat::Ply}) {
        LoadedMesh back = load_mesh(save_mesh(sphere, format, &colors), format);
        CHECK(back.colors == colors);
    }
}

TEST_CASE("save: color count mismatch") {
    TriangleMesh m = tetrahedron();
    std::vector<Rgb> colors(3);
    CHECK_THROWS_AS(save_mesh(m, MeshFormat::Obj, &colors), std::invalid_argument);
}

TEST_CASE("validate: tetrahedron is closed and manifold with chi 2") {
    ValidationReport rep = validate(tetrahedron());
    CHECK(rep.euler_characteristic == 2);
    CHECK(rep.closed());
    CHECK(rep.manifold());
    CHECK(rep.connected_components == 1);
    CHECK(rep.valid());
}

TEST_CASE("validate: two-triangle strip") {
    TriangleMesh m;
    m.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
    m.triangles = {{0, 1, 2}, {0, 2, 3}};
    ValidationReport rep = validate(m);
    CHECK(rep.edge_count == 5);
    CHECK(rep.boundary_edge_count == 4);
    CHECK(rep.euler_characteristic == 1);
}

TEST_CASE("validate: zero-area triangle reported") {
    TriangleMesh m;
    m.vertices = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {0, 1, 0}};
    m.triangles = {{0, 1, 3}, {0, 1, 2}};
    ValidationReport rep = validate(m);
    REQUIRE(rep.degenerate_triangles.size() == 1);
    CHECK(rep.degenerate_triangles[0] == 1);
    CHECK_FALSE(rep.valid());
}

TEST_CASE("validate: duplicated vertices counted") {
    TriangleMesh m;
    m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1e-10, 0, 0}};
    m.triangles = {{0, 1, 2}};
    CHECK(validate(m).duplicate_vertex_pairs == 1);
}

TEST_CASE("one rings: tetrahedron") {
    TriangleMesh m = tetrahedron();
    OneRingTable rings = build_one_rings(m);
    for (int v = 0; v < 4; ++v) {
        CHECK(rings.neighbors[v].size() == 3);
        CHECK(rings.incident_triangles[v].size() == 3);
        CHECK_FALSE(rings.is_boundary(v));
    }
}

TEST_CASE("one rings: single triangle is all boundary") {
    TriangleMesh m;
    m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    m.triangles = {{0, 1, 2}};
    OneRingTable rings = build_one_rings(m);
    for (int v = 0; v < 3; ++v) {
        CHECK(rings.is_boundary(v));
        CHECK(rings.neighbors[v].size() == 2);
        CHECK(rings.incident_triangles[v].size() == 1);
    }
}

TEST_CASE("one rings: icosphere subdiv 2 degrees") {
    TriangleMesh m = icosphere(2);
    OneRingTable rings = build_one_rings(m);
    int degree5 = 0;
    for (std::size_t v = 0; v < m.vertex_count(); ++v) {
        CHECK_FALSE(rings.is_boundary(static_cast<int>(v)));
        std::size_t deg = rings.neighbors[v].size();
        CHECK((deg == 5 || deg == 6));
        if (deg == 5) ++degree5;
        // Ordered fan: consecutive neighbors share a triangle with v.
        CHECK(rings.incident_triangles[v].size() == deg);
    }
    CHECK(degree5 == 12);
}

TEST_CASE("one rings: non-manifold edge reported") {
    TriangleMesh m;
    m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, -1, 0}};
    m.triangles = {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}};
    CHECK_THROWS_WITH_AS(build_one_rings(m), doctest::Contains("non-manifold edge"),
                         std::runtime_error);
}

TEST_CASE("one rings: deterministic across rebuilds") {
    TriangleMesh m = icosphere(3);
    OneRingTable a = build_one_rings(m);
    OneRingTable b = build_one_rings(m);
    CHECK(a.neighbors == b.neighbors);
    CHECK(a.incident_triangles == b.incident_triangles);
    CHECK(a.boundary == b.boundary);
}

TEST_CASE("vertex areas: equilateral triangle thirds") {
    TriangleMesh m;
    m.vertices = {{0, 0, 0}, {1, 0, 0}, {0.5, 0, std::sqrt(3.0) / 2.0}};
    m.triangles = {{0, 2, 1}};
    OneRingTable rings = build_one_rings(m);
    VertexAreas areas = vertex_areas(m, rings);
    double expected = std::sqrt(3.0) / 4.0 / 3.0;
    for (int v = 0; v < 3; ++v) CHECK(areas.area[v] == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("vertex areas: unit tetrahedron corners") {
    TriangleMesh m = unit_tetrahedron();
    OneRingTable rings = build_one_rings(m);
    VertexAreas areas = vertex_areas(m, rings);
    for (int v = 0; v < 4; ++v)
        CHECK(areas.area[v] == doctest::Approx(std::sqrt(3.0) / 4.0).epsilon(1e-12));
}

TEST_CASE("vertex areas: partition sums to total area for both schemes") {
    TriangleMesh m = icosphere(3);
    OneRingTable rings = build_one_rings(m);
    double total = total_surface_area(m);
    for (AreaScheme scheme : {AreaScheme::BarycentricThird, AreaScheme::MixedVoronoi}) {
        VertexAreas areas = vertex_areas(m, rings, scheme);
        double sum = 0.0;
        for (double a : areas.area) {
            CHECK(a >= 0.0);
            sum += a;
        }
        CHECK(sum == doctest::Approx(total).epsilon(1e-9));
    }
    // Unit sphere: total area close to 4*pi at subdiv 3.
    CHECK(total == doctest::Approx(4.0 * M_PI).epsilon(0.01));
}

TEST_CASE("primitives: euler characteristics") {
    CHECK(validate(icosphere(2)).euler_characteristic == 2);
    CHECK(validate(torus_grid(0.5, 0.2, 24, 16)).euler_characteristic == 0);
    ValidationReport cyl = validate(cylinder_tube(0.05, 0.3, 24, 12));
    CHECK(cyl.boundary_edge_count == 48);
    ValidationReport plane = validate(plane_grid(1.0, 1.0, 8, 8));
    CHECK(plane.euler_characteristic == 1);
}

TEST_CASE("structure: repeated vertex index rejected") {
    TriangleMesh m;
    m.vertices = {{0, 0, 0}, {1, 0, 0}};
    m.triangles = {{0, 1, 1}};
    CHECK_THROWS(m.check_structure());
}
