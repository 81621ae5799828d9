#include "oafem/driver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "oafem/parallel.hpp"
#include "oafem/quadrature.hpp"

namespace oafem {

std::vector<int> doerfler_mark(const std::vector<double>& indicators, double theta) {
    if (!(theta >= 0.0 && theta <= 1.0))
        throw std::invalid_argument("doerfler_mark: theta must lie in [0, 1]");
    std::vector<double> sq(indicators.size());
    double total = 0.0;
    for (std::size_t i = 0; i < indicators.size(); ++i) {
        sq[i] = indicators[i] * indicators[i];
        total += sq[i];
    }
    std::vector<int> order(indicators.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return sq[i] != sq[j] ? sq[i] > sq[j] : i < j; });
    const double target = theta * total;
    std::vector<int> marked;
    double run = 0.0;
    for (int i : order) {
        if (run >= target) break;
        if (sq[i] == 0.0) break;  // remaining indicators cannot raise the sum
        marked.push_back(i);
        run += sq[i];
    }
    return marked;
}

double exact_energy_error(const ScalarField& exact, const NodalField& u, const Mesh& mesh,
                          int degree) {
    if (!exact.has_gradient())
        throw std::invalid_argument("exact_energy_error: exact solution needs a gradient");
    auto rule = quadrature_rule(degree);
    double sum = chunked_sum(mesh.triangles.size(), [&](std::size_t tb, std::size_t te) {
        double s = 0.0;
        for (std::size_t t = tb; t < te; ++t) {
            const int ti = static_cast<int>(t);
            Vec2 gu = grad_p1(u, mesh, ti);
            s += integrate(mesh, ti, rule,
                           [&](Vec2 p) { return norm_sq(exact.gradient(p) - gu); });
        }
        return s;
    });
    return std::sqrt(sum);
}

AdaptHistory adaptive_loop(const ProblemData& problem, Mesh mesh, const AdaptParams& params) {
    if (!(params.max_dofs >= 1)) throw std::invalid_argument("adaptive_loop: bad DOF cap");
    AdaptHistory history;
    for (int level = 0;; ++level) {
        if (level > 1000) throw std::runtime_error("adaptive_loop: level cap exceeded");

        SparseOperator K = assemble_stiffness(mesh);
        std::vector<double> F = assemble_load(problem.f, mesh, params.area_degree);
        NodalField g_h;
        g_h.values.assign(mesh.vertices.size(), 0.0);
        for (int z = 0; z < mesh.num_vertices(); ++z)
            if (mesh.vertex_on_boundary[z]) g_h.values[z] = problem.g.value(mesh.vertices[z]);
        NodalField chi_h = nodal_interpolate(problem.chi, mesh);

        DiscreteSolution sol = solve_obstacle_assembled(K, F, chi_h, g_h, mesh, params.pdas);
        NodalField sigma = compute_sigma_h(sol.u, F, K, mesh);
        EdgeSet edges = edge_topology(mesh);
        EstimatorBreakdown est = total_estimator(params.mode, problem, sol.u, sigma, mesh, edges,
                                                 params.area_degree, params.edge_degree);
        if (params.observer) params.observer(level, mesh, sol, est);

        LevelRecord rec;
        rec.level = level;
        rec.ndof = mesh.num_vertices();
        rec.error = problem.has_exact() ? exact_energy_error(problem.exact, sol.u, mesh) : 0.0;
        rec.eta_f = std::sqrt(est.eta_f_sq);
        rec.eta_J = std::sqrt(est.eta_jump_sq);
        rec.eta_sigma = std::sqrt(est.eta_sigma_sq);
        rec.osc_g = std::sqrt(est.osc_g_sq);
        rec.osc_chi_grad = std::sqrt(est.osc_chi_grad_sq);
        rec.osc_chi_edge = std::sqrt(est.osc_chi_edge_sq);
        rec.total = est.total();
        rec.efficiency = rec.error > 0.0 ? rec.total / rec.error : 0.0;
        rec.min_angle = min_angle_deg(mesh);
        rec.marked = 0;
        history.levels.push_back(rec);

        if (mesh.num_vertices() >= params.max_dofs || est.total() <= params.tol) break;
        std::vector<int> marked = doerfler_mark(
            [&] {
                std::vector<double> ind(est.marking.size());
                for (std::size_t i = 0; i < ind.size(); ++i) ind[i] = std::sqrt(est.marking[i]);
                return ind;
            }(),
            params.theta);
        if (marked.empty()) break;
        history.levels.back().marked = static_cast<int>(marked.size());
        mesh = bisect(mesh, marked);
    }
    return history;
}

Mesh disk_initial_mesh() {
    std::vector<Vec2> coords;
    coords.push_back({0.0, 0.0});
    for (int k = 0; k < 16; ++k) {
        double angle = 2.0 * std::numbers::pi * k / 16.0;
        coords.push_back({std::cos(angle), std::sin(angle)});
    }
    std::vector<std::array<int, 3>> tris;
    for (int k = 0; k < 16; ++k) tris.push_back({0, 1 + k, 1 + (k + 1) % 16});
    Mesh fan = build_mesh(std::move(coords), std::move(tris), GeometryTag::UnitCircle);
    std::vector<int> all(fan.num_triangles());
    for (int t = 0; t < fan.num_triangles(); ++t) all[t] = t;
    return bisect(fan, all);
}

AdaptHistory disk_benchmark(const AdaptParams& params) {
    return adaptive_loop(disk_problem(), disk_initial_mesh(), params);
}

std::string history_csv(const AdaptHistory& history) {
    std::string out =
        "level,ndof,error,eta_f,eta_J,eta_sigma,osc_g,osc_chi_grad,osc_chi_edge,total,"
        "efficiency,marked\n";
    for (const auto& r : history.levels) {
        out += std::to_string(r.level) + "," + std::to_string(r.ndof) + "," +
               format_double17(r.error) + "," + format_double17(r.eta_f) + "," +
               format_double17(r.eta_J) + "," + format_double17(r.eta_sigma) + "," +
               format_double17(r.osc_g) + "," + format_double17(r.osc_chi_grad) + "," +
               format_double17(r.osc_chi_edge) + "," + format_double17(r.total) + "," +
               format_double17(r.efficiency) + "," + std::to_string(r.marked) + "\n";
    }
    return out;
}

void write_history_csv(const AdaptHistory& history, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << history_csv(history);
    if (!out) throw std::runtime_error("failed to write " + path);
}

}  // namespace oafem
