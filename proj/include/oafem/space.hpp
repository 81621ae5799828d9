#pragma once

#include <functional>
#include <vector>

#include "oafem/mesh.hpp"

namespace oafem {

// Pointwise-evaluable data function with an optional analytic gradient.
struct ScalarField {
    std::function<double(Vec2)> value;
    std::function<Vec2(Vec2)> gradient;

    bool has_gradient() const { return static_cast<bool>(gradient); }
};

// Coefficients of a continuous piecewise-linear function, one per mesh vertex.
struct NodalField {
    std::vector<double> values;

    int size() const { return static_cast<int>(values.size()); }
    double operator[](int i) const { return values[i]; }
    double& operator[](int i) { return values[i]; }
};

// Barycentric coordinates of p with respect to triangle t.  Exact (1, 0, 0)
// permutations at the corners.
std::array<double, 3> barycentric(const Mesh& mesh, int t, Vec2 p);

NodalField nodal_interpolate(const ScalarField& field, const Mesh& mesh);

// Value of the P1 function on triangle t at p.  Throws if p lies outside t by
// more than 1e-12 in barycentric coordinates.
double eval_p1(const NodalField& w, const Mesh& mesh, int t, Vec2 p);

// Value of the linear polynomial that w restricts to on triangle t, evaluated
// without the containment check (linear extension beyond t).
double eval_p1_extended(const NodalField& w, const Mesh& mesh, int t, Vec2 p);

// Constant gradient of w on triangle t.
Vec2 grad_p1(const NodalField& w, const Mesh& mesh, int t);

// Mass-lumped inner product sum_T (|T|/3) sum_{z in T} w(z) v(z).
double lumped_inner(const NodalField& w, const NodalField& v, const Mesh& mesh);

// Diagonal of the lumped mass matrix: m_z = sum_{T owning z} |T|/3.
std::vector<double> lumped_vertex_mass(const Mesh& mesh);

}  // namespace oafem
