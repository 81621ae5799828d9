#pragma once

#include <functional>
#include <string>
#include <vector>

#include "oafem/estimator.hpp"
#include "oafem/solver.hpp"

namespace oafem {

// Bulk marking: smallest set of elements, taken in order of descending
// squared indicator (ties by element index), whose squared indicators sum to
// at least theta times the total.  Indicators are passed unsquared.
std::vector<int> doerfler_mark(const std::vector<double>& indicators, double theta);

// Energy norm error || grad(exact - u) ||_{L2(Omega)} by elementwise
// quadrature; requires an analytic gradient of the exact solution.
double exact_energy_error(const ScalarField& exact, const NodalField& u, const Mesh& mesh,
                          int degree = 6);

struct LevelRecord {
    int level = 0;
    int ndof = 0;
    double error = 0.0;       // 0 when no exact solution is available
    double eta_f = 0.0;
    double eta_J = 0.0;
    double eta_sigma = 0.0;
    double osc_g = 0.0;
    double osc_chi_grad = 0.0;
    double osc_chi_edge = 0.0;
    double total = 0.0;
    double efficiency = 0.0;  // total / error, 0 when error is unavailable
    int marked = 0;           // elements marked on this level (0 on the last)
    double min_angle = 0.0;   // degrees
};

struct AdaptHistory {
    std::vector<LevelRecord> levels;
};

struct AdaptParams {
    double theta = 0.3;
    EstimatorMode mode = EstimatorMode::Simplified;
    int max_dofs = 50000;      // stop once the vertex count reaches this
    double tol = 1e-8;         // stop once the total estimate drops below this
    int area_degree = 4;
    int edge_degree = 10;
    PdasParams pdas;
    // Called once per level after estimation, before marking.
    std::function<void(int level, const Mesh& mesh, const DiscreteSolution& sol,
                       const EstimatorBreakdown& estimate)>
        observer;
};

// Solve -> estimate -> mark -> refine until a stopping criterion fires.
// Records one row per visited level; vertex counts increase strictly from
// level to level.
AdaptHistory adaptive_loop(const ProblemData& problem, Mesh mesh, const AdaptParams& params);

// Fan triangulation of the inscribed regular 16-gon plus one bisection round,
// tagged with unit-circle geometry so refined boundary vertices land on the
// circle.
Mesh disk_initial_mesh();

// Adaptive run of the unit-disk benchmark.
AdaptHistory disk_benchmark(const AdaptParams& params);

// CSV table of a history; fixed column set, 17-significant-digit numbers,
// LF line endings.
std::string history_csv(const AdaptHistory& history);
void write_history_csv(const AdaptHistory& history, const std::string& path);

}  // namespace oafem
