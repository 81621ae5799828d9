#include "oafem/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace oafem {

namespace {

double dot_vec(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double linf(const std::vector<double>& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

void check_boundary_feasible(const Mesh& mesh, const NodalField& chi_h, const NodalField& g_h) {
    double scale = 1.0 + linf(chi_h.values) + linf(g_h.values);
    for (int z = 0; z < mesh.num_vertices(); ++z)
        if (mesh.vertex_on_boundary[z] && g_h.values[z] < chi_h.values[z] - 1e-12 * scale)
            throw std::invalid_argument("boundary values lie below the obstacle at vertex " +
                                        std::to_string(z));
}

NodalField interpolate_boundary(const ScalarField& g, const Mesh& mesh) {
    if (!g.value) throw std::invalid_argument("boundary field has no value callback");
    NodalField g_h;
    g_h.values.assign(mesh.vertices.size(), 0.0);
    for (int z = 0; z < mesh.num_vertices(); ++z)
        if (mesh.vertex_on_boundary[z]) g_h.values[z] = g.value(mesh.vertices[z]);
    return g_h;
}

}  // namespace

NodalField solve_spd(const SparseOperator& A, const std::vector<double>& b,
                     const std::vector<std::uint8_t>& fixed,
                     const std::vector<double>& fixed_values, double rel_tol, int max_iterations,
                     double* final_residual) {
    const int n = A.rows();
    if (A.cols() != n) throw std::invalid_argument("solve_spd: matrix is not square");
    if (static_cast<int>(b.size()) != n || static_cast<int>(fixed.size()) != n ||
        static_cast<int>(fixed_values.size()) != n)
        throw std::invalid_argument("solve_spd: vector sizes do not match the matrix");

    NodalField x;
    x.values.assign(n, 0.0);
    for (int i = 0; i < n; ++i)
        if (fixed[i]) x.values[i] = fixed_values[i];

    std::vector<double> diag = A.diagonal();
    for (int i = 0; i < n; ++i)
        if (!fixed[i] && !(diag[i] > 0.0))
            throw std::invalid_argument("solve_spd: non-positive diagonal at row " +
                                        std::to_string(i));

    std::vector<double> r(n), q(n);
    A.apply(x.values, q);
    for (int i = 0; i < n; ++i) r[i] = fixed[i] ? 0.0 : b[i] - q[i];
    double r0 = std::sqrt(dot_vec(r, r));
    if (r0 == 0.0) {
        if (final_residual) *final_residual = 0.0;
        return x;
    }

    std::vector<double> z(n, 0.0), p(n, 0.0);
    for (int i = 0; i < n; ++i)
        if (!fixed[i]) z[i] = r[i] / diag[i];
    p = z;
    double rz = dot_vec(r, z);

    const long cap = max_iterations > 0 ? max_iterations : std::max(1000L, 10L * n);
    for (long it = 0; it < cap; ++it) {
        A.apply(p, q);
        for (int i = 0; i < n; ++i)
            if (fixed[i]) q[i] = 0.0;
        double pq = dot_vec(p, q);
        if (!(pq > 0.0)) throw SolverError("solve_spd: operator is not positive definite");
        double alpha = rz / pq;
        for (int i = 0; i < n; ++i) {
            x.values[i] += alpha * p[i];
            r[i] -= alpha * q[i];
        }
        double rn = std::sqrt(dot_vec(r, r));
        if (rn <= rel_tol * r0) {
            if (final_residual) *final_residual = rn / r0;
            return x;
        }
        for (int i = 0; i < n; ++i) z[i] = fixed[i] ? 0.0 : r[i] / diag[i];
        double rz_next = dot_vec(r, z);
        double beta = rz_next / rz;
        rz = rz_next;
        for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    throw SolverError("solve_spd: conjugate gradient hit the iteration cap");
}

DiscreteSolution solve_obstacle_assembled(const SparseOperator& K, const std::vector<double>& F,
                                          const NodalField& chi_h, const NodalField& g_h,
                                          const Mesh& mesh, const PdasParams& params) {
    const int n = mesh.num_vertices();
    if (K.rows() != n || K.cols() != n || static_cast<int>(F.size()) != n ||
        chi_h.size() != n || g_h.size() != n)
        throw std::invalid_argument("solve_obstacle: sizes do not match the mesh");
    check_boundary_feasible(mesh, chi_h, g_h);

    std::vector<std::uint8_t> active(n, 0);
    if (params.start_all_active)
        for (int z = 0; z < n; ++z)
            if (!mesh.vertex_on_boundary[z]) active[z] = 1;

    std::vector<std::uint8_t> fixed(n);
    std::vector<double> vals(n), ku(n);
    for (int iter = 1; iter <= params.max_iterations; ++iter) {
        for (int z = 0; z < n; ++z) {
            if (mesh.vertex_on_boundary[z]) {
                fixed[z] = 1;
                vals[z] = g_h.values[z];
            } else if (active[z]) {
                fixed[z] = 1;
                vals[z] = chi_h.values[z];
            } else {
                fixed[z] = 0;
                vals[z] = 0.0;
            }
        }
        double res = 0.0;
        NodalField u = solve_spd(K, F, fixed, vals, params.cg_rel_tol, params.cg_max_iterations,
                                 &res);
        K.apply(u.values, ku);
        std::vector<std::uint8_t> next(n, 0);
        for (int z = 0; z < n; ++z) {
            if (mesh.vertex_on_boundary[z]) continue;
            double lambda = F[z] - ku[z];
            if (lambda + params.c * (u.values[z] - chi_h.values[z]) < 0.0) next[z] = 1;
        }
        if (next == active) return {std::move(u), std::move(active), iter, res};
        active = std::move(next);
    }
    throw SolverError("active set iteration did not converge within " +
                      std::to_string(params.max_iterations) + " iterations");
}

DiscreteSolution solve_obstacle(const ProblemData& problem, const Mesh& mesh,
                                const PdasParams& params) {
    if (!problem.chi.value) throw std::invalid_argument("solve_obstacle: obstacle has no value");
    NodalField chi_h = nodal_interpolate(problem.chi, mesh);
    NodalField g_h = interpolate_boundary(problem.g, mesh);
    SparseOperator K = assemble_stiffness(mesh);
    std::vector<double> F = assemble_load(problem.f, mesh);
    return solve_obstacle_assembled(K, F, chi_h, g_h, mesh, params);
}

DiscreteSolution brute_force_obstacle(const ProblemData& problem, const Mesh& mesh) {
    std::vector<int> interior;
    for (int z = 0; z < mesh.num_vertices(); ++z)
        if (!mesh.vertex_on_boundary[z]) interior.push_back(z);
    const int m = static_cast<int>(interior.size());
    if (m > 12)
        throw std::invalid_argument("brute_force_obstacle supports at most 12 interior vertices, "
                                    "got " + std::to_string(m));

    NodalField chi_h = nodal_interpolate(problem.chi, mesh);
    NodalField g_h = interpolate_boundary(problem.g, mesh);
    check_boundary_feasible(mesh, chi_h, g_h);
    SparseOperator K = assemble_stiffness(mesh);
    std::vector<double> F = assemble_load(problem.f, mesh);
    const int n = mesh.num_vertices();

    bool have_best = false;
    double best_energy = 0.0;
    DiscreteSolution best;
    std::vector<std::uint8_t> fixed(n);
    std::vector<double> vals(n), ku(n);

    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        for (int z = 0; z < n; ++z) {
            fixed[z] = mesh.vertex_on_boundary[z];
            vals[z] = fixed[z] ? g_h.values[z] : 0.0;
        }
        for (int j = 0; j < m; ++j) {
            if (mask & (1u << j)) {
                fixed[interior[j]] = 1;
                vals[interior[j]] = chi_h.values[interior[j]];
            }
        }
        double res = 0.0;
        NodalField u = solve_spd(K, F, fixed, vals, 1e-13, 0, &res);
        K.apply(u.values, ku);

        double primal_tol = 1e-9 * (1.0 + linf(u.values) + linf(chi_h.values));
        double dual_tol = 1e-9 * (1.0 + linf(F) + linf(ku));
        bool ok = true;
        for (int j = 0; j < m && ok; ++j) {
            int z = interior[j];
            if (mask & (1u << j)) {
                if (F[z] - ku[z] > dual_tol) ok = false;
            } else {
                if (u.values[z] < chi_h.values[z] - primal_tol) ok = false;
            }
        }
        if (!ok) continue;

        double energy = 0.5 * dot_vec(u.values, ku) - dot_vec(F, u.values);
        if (!have_best || energy < best_energy) {
            have_best = true;
            best_energy = energy;
            best.u = std::move(u);
            best.active.assign(n, 0);
            for (int j = 0; j < m; ++j)
                if (mask & (1u << j)) best.active[interior[j]] = 1;
            best.residual_norm = res;
        }
    }
    if (!have_best)
        throw SolverError("exhaustive search found no candidate satisfying the optimality "
                          "conditions");
    best.iterations = 1 << m;
    return best;
}

}  // namespace oafem
