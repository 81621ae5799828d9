#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "oafem/geometry.hpp"
#include "oafem/mesh.hpp"

namespace oafem {

struct QuadPoint {
    double b0 = 0.0, b1 = 0.0, b2 = 0.0;  // barycentric coordinates
    double w = 0.0;                       // weight; all weights of a rule sum to 1
};

struct QuadratureRule {
    int degree = 0;
    std::vector<QuadPoint> points;
};

// Rule exact for polynomials up to the given total degree on a triangle.
// Degree 1 is the centroid rule, degree 2 the edge-midpoint rule; higher
// degrees use a collapsed tensor-product construction, so all weights are
// positive at every degree.  Supported range is 1..30.
QuadratureRule quadrature_rule(int degree);

// Gauss-Legendre nodes and weights on [0, 1]; weights sum to 1.  An n-point
// rule is exact for polynomials of degree 2n - 1.
std::vector<std::pair<double, double>> gauss_legendre_01(int n);

// Smallest Gauss-Legendre point count exact for the given 1D degree.
int gauss_points_for_degree(int degree);

// Integral of fn over triangle t of the mesh using the given rule.
double integrate(const Mesh& mesh, int t, const QuadratureRule& rule,
                 const std::function<double(Vec2)>& fn);

// Integral of fn along the segment from a to b with arclength measure,
// using Gauss-Legendre quadrature of the given polynomial degree.
double integrate_edge(Vec2 a, Vec2 b, int degree, const std::function<double(Vec2)>& fn);

}  // namespace oafem
