#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "oafem/geometry.hpp"

namespace oafem {

// Domain boundary handling for vertices created on boundary edges during
// refinement.  UnitCircle projects new boundary vertices onto |x| = 1.
enum class GeometryTag { Polygonal, UnitCircle };

// Local edge i of a triangle is the edge opposite vertex i, i.e. it connects
// vertices (i+1)%3 and (i+2)%3.
struct Triangle {
    std::array<int, 3> v{};     // vertex indices, counterclockwise
    int refinement_edge = 0;    // local index of the bisection edge
};

struct Mesh {
    std::vector<Vec2> vertices;
    std::vector<Triangle> triangles;
    std::vector<std::uint8_t> vertex_on_boundary;
    GeometryTag geometry = GeometryTag::Polygonal;

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_triangles() const { return static_cast<int>(triangles.size()); }

    std::array<Vec2, 3> corners(int t) const {
        const auto& tri = triangles[t];
        return {vertices[tri.v[0]], vertices[tri.v[1]], vertices[tri.v[2]]};
    }
};

struct InteriorEdge {
    int a = 0, b = 0;        // endpoint vertex indices, a < b
    int tri_plus = 0;        // adjacent triangle with the smaller index
    int tri_minus = 0;
    int local_plus = 0;      // local edge index within tri_plus / tri_minus
    int local_minus = 0;
    Vec2 normal_plus;        // unit normal pointing from tri_plus into tri_minus
    double length = 0.0;
};

struct BoundaryEdge {
    int a = 0, b = 0;        // endpoint vertex indices, a < b
    int tri = 0;             // owning triangle
    int local = 0;           // local edge index within tri
    double length = 0.0;
};

struct EdgeSet {
    std::vector<InteriorEdge> interior;
    std::vector<BoundaryEdge> boundary;
    std::vector<double> h_T;  // per-triangle diameter (longest edge)
};

// Builds a validated mesh.  Triangles are reoriented counterclockwise and the
// refinement edge of every triangle is initialized to its longest edge, ties
// broken by the smallest global index of the opposite vertex.  Rejects
// out-of-range or repeated indices, degenerate triangles, duplicate vertices,
// edges shared by more than two triangles, and hanging nodes.
Mesh build_mesh(std::vector<Vec2> coords, std::vector<std::array<int, 3>> tris,
                GeometryTag geometry = GeometryTag::Polygonal);

// Edge topology with deterministic ordering: edges appear sorted by their
// (a, b) index pairs.
EdgeSet edge_topology(const Mesh& mesh);

// Newest-vertex bisection of the marked triangles plus conforming closure.
// Children inherit the edges opposite the new vertex as refinement edges,
// which preserves the similarity classes of the input triangulation.  An
// empty marked set returns an identical mesh.
Mesh bisect(const Mesh& mesh, const std::vector<int>& marked);

double triangle_area(const Mesh& mesh, int t);
double triangle_diameter(const Mesh& mesh, int t);

// Smallest interior angle over all triangles, in degrees.
double min_angle_deg(const Mesh& mesh);

// Throws if the mesh violates conformity: every edge must be incident to one
// or two triangles, adjacent triangles must traverse shared edges in opposite
// directions, and vertex boundary flags must match boundary-edge incidence.
void validate_mesh(const Mesh& mesh);

// Text format: header "V T", then V lines "x y flag", then T lines "i j k"
// with 0-based indices.  Coordinates are written with 17 significant digits,
// so write -> read -> write reproduces the file byte for byte.
void write_mesh(const Mesh& mesh, const std::string& path);
Mesh read_mesh(const std::string& path, GeometryTag geometry = GeometryTag::Polygonal);

}  // namespace oafem
