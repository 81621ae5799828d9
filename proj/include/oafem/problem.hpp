#pragma once

#include <string>

#include "oafem/space.hpp"

namespace oafem {

// Data of one obstacle problem: right-hand side f, obstacle chi, Dirichlet
// boundary values g, and optionally the exact solution for error reporting.
struct ProblemData {
    ScalarField f;
    ScalarField chi;
    ScalarField g;
    ScalarField exact;

    bool has_exact() const { return static_cast<bool>(exact.value); }
};

ScalarField zero_field();
ScalarField constant_field(double c);
ScalarField linear_field(double a, double b, double c);  // a + b*x + c*y

// 1 - 2(x^2 + y^2), the obstacle of the unit-disk benchmark.
ScalarField quadratic_bowl_field();

// Contact radius of the unit-disk benchmark, (sqrt(2) - 1)/sqrt(2).
double disk_contact_radius();

// Benchmark right-hand side: 0 inside the contact radius, 4 r0 / r outside.
// Points exactly on the contact circle take the outer branch.
ScalarField disk_load_field();

// Benchmark solution: 1 - 2 r^2 inside the contact radius, 4 r0 (1 - r)
// outside; continuously differentiable across the contact circle.
ScalarField disk_exact_field();

// Parses a field description used in problem config files, e.g. "zero",
// "constant:-12", "linear:1,0.5,2", "quadratic_bowl", "disk_load",
// "disk_exact".  Throws std::invalid_argument on unknown names or bad
// parameter lists.
ScalarField make_field(const std::string& spec);

// The unit-disk benchmark problem.
ProblemData disk_problem();

}  // namespace oafem
