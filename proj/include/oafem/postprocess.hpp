#pragma once

#include <functional>

#include "oafem/mesh.hpp"
#include "oafem/space.hpp"

namespace oafem {

// Foot points of the normal-ray construction on a boundary triangle.  With e
// the boundary edge and z a point of the closed triangle, z1 is the
// orthogonal projection of z onto the line of e and z2 the intersection of
// the normal ray through z with the remaining boundary of the triangle, so
// z = z1 + h1/(h1+h2) (z2 - z1) whenever h1 + h2 > 0.
struct FootPointData {
    Vec2 z1;
    Vec2 z2;
    double h1 = 0.0;      // distance from z to z1
    double h2 = 0.0;      // distance from z to z2
    int subtriangle = 1;  // 1 if z projects at or before the apex foot point, else 2
};

FootPointData foot_points(const Mesh& mesh, int tri, int local_edge, Vec2 z);

// Corrected boundary interpolant along each normal ray:
//   u~(z) = (h2 u*(z1) + h1 u*(z2)) / (h1 + h2),
// where u* equals the boundary data g where the ray meets the boundary edge
// itself and the linear extension of u otherwise.  On the boundary edge the
// corrected interpolant matches g, elsewhere on the triangle boundary it
// matches u, and its range over the triangle lies inside the range of u* over
// the triangle boundary.
double tilde_eval(const NodalField& u, const ScalarField& g, const Mesh& mesh, int tri,
                  int local_edge, Vec2 z);

// Integrates fn over the boundary triangle, splitting it along the lines
// where the corrected interpolant changes its defining expression so the
// quadrature never straddles a kink.  fn receives the quadrature point, the
// deviation (u~ - u)(x) and the deviation gradient; the deviation vanishes
// outside the strip of points that project onto the boundary edge.  When g
// has no analytic gradient its tangential derivative is approximated by a
// central difference with step 1e-6 times the edge length.
double integrate_boundary_triangle(const NodalField& u, const ScalarField& g, const Mesh& mesh,
                                   int tri, int local_edge, int degree,
                                   const std::function<double(Vec2, double, Vec2)>& fn);

// || grad(u - u~) ||^2 over one boundary triangle (quadrature degree per
// piece; 5 by default).
double tilde_grad_deviation_sq(const NodalField& u, const ScalarField& g, const Mesh& mesh,
                               int tri, int local_edge, int degree = 5);

// Boundary-correction estimator: sqrt of the sum of tilde_grad_deviation_sq
// over all boundary edges.
double eta_g(const NodalField& u, const ScalarField& g, const Mesh& mesh, const EdgeSet& edges,
             int degree = 5);

}  // namespace oafem
