#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "fixtures.hpp"
#include "oafem/mesh.hpp"

using namespace oafem;

namespace {

int edge_count(const Mesh& mesh) {
    EdgeSet e = edge_topology(mesh);
    return static_cast<int>(e.interior.size() + e.boundary.size());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("two-triangle square topology") {
    Mesh mesh = fixtures::unit_square_two();
    CHECK(mesh.num_vertices() == 4);
    CHECK(mesh.num_triangles() == 2);
    EdgeSet edges = edge_topology(mesh);
    REQUIRE(edges.interior.size() == 1);
    CHECK(edges.boundary.size() == 4);
    CHECK(edges.interior[0].length == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(edges.h_T[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(edges.h_T[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    // All four corners are boundary vertices.
    for (int v = 0; v < 4; ++v) CHECK(mesh.vertex_on_boundary[v] == 1);
    // Refinement edge is the diagonal in both triangles.
    CHECK(mesh.triangles[0].refinement_edge == 1);
    CHECK(mesh.triangles[1].refinement_edge == 2);
    validate_mesh(mesh);
}

TEST_CASE("criss-cross topology and edge lengths") {
    Mesh mesh = fixtures::criss_cross();
    EdgeSet edges = edge_topology(mesh);
    CHECK(edges.interior.size() == 4);
    CHECK(edges.boundary.size() == 4);
    for (const auto& e : edges.interior)
        CHECK(e.length == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    for (const auto& e : edges.boundary) CHECK(e.length == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(mesh.vertex_on_boundary[4] == 0);
    CHECK(min_angle_deg(mesh) == doctest::Approx(45.0).epsilon(1e-13));
    // Interior edge normals point from the lower-indexed triangle into the other.
    for (const auto& e : edges.interior) {
        CHECK(e.tri_plus < e.tri_minus);
        CHECK(norm(e.normal_plus) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("build_mesh input validation") {
    CHECK_THROWS_AS(build_mesh({{0, 0}, {1, 0}, {0, 1}}, {{{0, 1, 3}}}), std::invalid_argument);
    CHECK_THROWS_AS(build_mesh({{0, 0}, {1, 0}, {0, 1}}, {{{0, 1, 1}}}), std::invalid_argument);
    // Collinear triangle.
    CHECK_THROWS_AS(build_mesh({{0, 0}, {1, 0}, {2, 0}}, {{{0, 1, 2}}}), std::invalid_argument);
    // Duplicate vertices.
    CHECK_THROWS_AS(build_mesh({{0, 0}, {1, 0}, {0, 1}, {1.0 + 1e-14, 0}},
                               {{{0, 1, 2}}, {{1, 3, 2}}}),
                    std::invalid_argument);
    // Edge shared by three triangles.
    CHECK_THROWS_AS(build_mesh({{0, 0}, {1, 0}, {0, 1}, {0, -1}, {0.5, 0.5}},
                               {{{0, 1, 2}}, {{0, 1, 3}}, {{0, 1, 4}}}),
                    std::invalid_argument);
    // Hanging node: the lower half is split at the diagonal midpoint, the
    // upper half still sees the full diagonal.
    CHECK_THROWS_AS(build_mesh({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}},
                               {{{0, 1, 4}}, {{1, 2, 4}}, {{0, 2, 3}}}),
                    std::invalid_argument);
}

TEST_CASE("clockwise input is reoriented") {
    Mesh mesh = build_mesh({{0, 0}, {1, 0}, {0, 1}}, {{{0, 2, 1}}});
    CHECK(triangle_area(mesh, 0) > 0.0);
    validate_mesh(mesh);
}

TEST_CASE("single triangle boundary flags") {
    Mesh mesh = fixtures::single_triangle();
    EdgeSet edges = edge_topology(mesh);
    CHECK(edges.interior.empty());
    CHECK(edges.boundary.size() == 3);
    for (int v = 0; v < 3; ++v) CHECK(mesh.vertex_on_boundary[v] == 1);
}

TEST_CASE("bisect one marked triangle of the two-triangle square") {
    Mesh mesh = fixtures::unit_square_two();
    Mesh fine = bisect(mesh, {0});
    // Closure forces the neighbor across the shared diagonal as well.
    CHECK(fine.num_triangles() == 4);
    CHECK(fine.num_vertices() == 5);
    CHECK(fine.vertices[4].x == doctest::Approx(0.5).epsilon(1e-16));
    CHECK(fine.vertices[4].y == doctest::Approx(0.5).epsilon(1e-16));
    CHECK(fine.vertex_on_boundary[4] == 0);
    validate_mesh(fine);
}

TEST_CASE("bisect with empty marked set returns an identical mesh") {
    Mesh mesh = fixtures::criss_cross();
    Mesh same = bisect(mesh, {});
    CHECK(same.num_vertices() == mesh.num_vertices());
    CHECK(same.num_triangles() == mesh.num_triangles());
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        CHECK(same.vertices[v].x == mesh.vertices[v].x);
        CHECK(same.vertices[v].y == mesh.vertices[v].y);
    }
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        CHECK(same.triangles[t].v == mesh.triangles[t].v);
        CHECK(same.triangles[t].refinement_edge == mesh.triangles[t].refinement_edge);
    }
}

TEST_CASE("bisect rejects out-of-range element ids") {
    Mesh mesh = fixtures::criss_cross();
    CHECK_THROWS_AS(bisect(mesh, {7}), std::invalid_argument);
    CHECK_THROWS_AS(bisect(mesh, {-1}), std::invalid_argument);
}

TEST_CASE("marking all criss-cross triangles bisects each base edge") {
    Mesh mesh = fixtures::criss_cross();
    std::vector<int> all{0, 1, 2, 3};
    Mesh fine = bisect(mesh, all);
    CHECK(fine.num_triangles() == 8);
    CHECK(fine.num_vertices() == 9);
    CHECK(min_angle_deg(fine) == doctest::Approx(45.0).epsilon(1e-13));
    validate_mesh(fine);
}

TEST_CASE("repeated uniform bisection keeps the 45 degree angle and conformity") {
    Mesh mesh = fixtures::criss_cross();
    for (int round = 0; round < 10; ++round) {
        std::vector<int> all(mesh.num_triangles());
        for (int t = 0; t < mesh.num_triangles(); ++t) all[t] = t;
        mesh = bisect(mesh, all);
        validate_mesh(mesh);
        CHECK(std::abs(min_angle_deg(mesh) - 45.0) <= 1e-12);
        // Euler characteristic of a disk-like triangulation.
        int euler = mesh.num_vertices() - edge_count(mesh) + mesh.num_triangles();
        CHECK(euler == 1);
    }
    CHECK(mesh.num_triangles() == 4 * 1024);
}

TEST_CASE("unit-circle refinement projects new boundary vertices") {
    std::vector<Vec2> coords{{0.0, 0.0}};
    for (int k = 0; k < 16; ++k) {
        double a = 2.0 * std::acos(-1.0) * k / 16.0;
        coords.push_back({std::cos(a), std::sin(a)});
    }
    std::vector<std::array<int, 3>> tris;
    for (int k = 0; k < 16; ++k) tris.push_back({0, 1 + k, 1 + (k + 1) % 16});
    Mesh mesh = build_mesh(coords, tris, GeometryTag::UnitCircle);
    int boundary_before = 0;
    for (auto f : mesh.vertex_on_boundary) boundary_before += f;
    for (int round = 0; round < 3; ++round) {
        std::vector<int> all(mesh.num_triangles());
        for (int t = 0; t < mesh.num_triangles(); ++t) all[t] = t;
        mesh = bisect(mesh, all);
        validate_mesh(mesh);
    }
    int boundary_after = 0;
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        if (!mesh.vertex_on_boundary[v]) continue;
        ++boundary_after;
        CHECK(std::abs(norm(mesh.vertices[v]) - 1.0) <= 1e-14);
    }
    CHECK(boundary_after > boundary_before);
    CHECK(mesh.geometry == GeometryTag::UnitCircle);
}

TEST_CASE("mesh file round trip is bit exact") {
    Mesh start = fixtures::criss_cross();
    Mesh mesh = bisect(start, {0, 2});
    const std::string p1 = "roundtrip_a.txt";
    const std::string p2 = "roundtrip_b.txt";
    write_mesh(mesh, p1);
    Mesh back = read_mesh(p1);
    REQUIRE(back.num_vertices() == mesh.num_vertices());
    REQUIRE(back.num_triangles() == mesh.num_triangles());
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        CHECK(back.vertices[v].x == mesh.vertices[v].x);
        CHECK(back.vertices[v].y == mesh.vertices[v].y);
        CHECK(back.vertex_on_boundary[v] == mesh.vertex_on_boundary[v]);
    }
    for (int t = 0; t < mesh.num_triangles(); ++t) CHECK(back.triangles[t].v == mesh.triangles[t].v);
    write_mesh(back, p2);
    CHECK(slurp(p1) == slurp(p2));
    std::remove(p1.c_str());
    std::remove(p2.c_str());
}

TEST_CASE("read_mesh rejects malformed files") {
    const std::string path = "bad_mesh.txt";
    {
        std::ofstream out(path, std::ios::binary);
        out << "3 1\n0 0 1\n1 0 1\n";  // truncated
    }
    CHECK_THROWS_AS(read_mesh(path), std::invalid_argument);
    {
        std::ofstream out(path, std::ios::binary);
        out << "3 1\n0 0 2\n1 0 1\n0 1 1\n0 1 2\n";  // bad flag value
    }
    CHECK_THROWS_AS(read_mesh(path), std::invalid_argument);
    {
        std::ofstream out(path, std::ios::binary);
        out << "3 1\n0 0 1\n1 0 1\n0 1 0\n0 1 2\n";  // flag contradicts incidence
    }
    CHECK_THROWS_AS(read_mesh(path), std::invalid_argument);
    CHECK_THROWS_AS(read_mesh("no_such_mesh_file.txt"), std::invalid_argument);
    std::remove(path.c_str());
}

TEST_CASE("bisection child refinement edges oppose the new vertex") {
    Mesh mesh = fixtures::unit_square_two();
    Mesh fine = bisect(mesh, {0});
    // Each child's refinement edge must be one of the parent's short edges,
    // i.e. the edge not containing the new vertex 4.
    for (const auto& t : fine.triangles) {
        int r = t.refinement_edge;
        int a = t.v[(r + 1) % 3], b = t.v[(r + 2) % 3];
        CHECK(a != 4);
        CHECK(b != 4);
    }
}
