#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "oafem/assembly.hpp"
#include "oafem/problem.hpp"

namespace oafem {

// Runtime failure of an iterative solver (iteration caps, non-convergence).
class SolverError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct PdasParams {
    double c = 1.0;              // weight of the primal violation in the active-set test
    int max_iterations = 100;
    double cg_rel_tol = 1e-12;
    int cg_max_iterations = 0;   // 0 = automatic cap based on the system size
    bool start_all_active = false;
};

struct DiscreteSolution {
    NodalField u;
    std::vector<std::uint8_t> active;  // per vertex; set only at interior vertices
    int iterations = 0;
    double residual_norm = 0.0;        // relative residual of the last linear solve
};

// Preconditioned conjugate gradients (Jacobi) for A x = b with prescribed
// values at fixed indices.  Stops when the free-variable residual drops below
// rel_tol times its initial value.  Throws SolverError on the iteration cap.
NodalField solve_spd(const SparseOperator& A, const std::vector<double>& b,
                     const std::vector<std::uint8_t>& fixed,
                     const std::vector<double>& fixed_values, double rel_tol = 1e-12,
                     int max_iterations = 0, double* final_residual = nullptr);

// Primal-dual active set iteration for the discrete obstacle problem
//   u >= chi_h at interior vertices, u = g_h at boundary vertices,
//   lambda = F - K u <= 0,  lambda (u - chi_h) = 0.
// A vertex joins the active set when lambda + c (u - chi_h) < 0; the iteration
// stops when the active set repeats.  Starts from the empty active set unless
// params.start_all_active is set; the converged solution does not depend on
// the start.  Throws SolverError when max_iterations is exhausted.
DiscreteSolution solve_obstacle_assembled(const SparseOperator& K, const std::vector<double>& F,
                                          const NodalField& chi_h, const NodalField& g_h,
                                          const Mesh& mesh, const PdasParams& params = {});

// Convenience wrapper: interpolates chi and g, assembles the stiffness matrix
// and the load vector (quadrature degree 4), then runs the active-set solver.
DiscreteSolution solve_obstacle(const ProblemData& problem, const Mesh& mesh,
                                const PdasParams& params = {});

// Reference solver for tiny meshes: tries every subset of interior vertices
// as the active set, keeps the Karush-Kuhn-Tucker-consistent candidate with
// the smallest energy.  Requires at most 12 interior vertices.
DiscreteSolution brute_force_obstacle(const ProblemData& problem, const Mesh& mesh);

}  // namespace oafem
