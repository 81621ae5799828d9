#include "oafem/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "CLI11.hpp"
#include "oafem/driver.hpp"
#include "oafem/multiplier.hpp"
#include "oafem/svg.hpp"

namespace oafem {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

struct RunOptions {
    double theta = 0.3;
    std::string mode = "simplified";
    int max_dofs = 50000;
    double tol = 1e-8;
    int quad_area = 4;
    int quad_edge = 10;
    std::string out_dir = ".";
    std::vector<int> snapshots;
};

void add_common_options(CLI::App* cmd, RunOptions& opt) {
    cmd->add_option("--mode", opt.mode, "estimator mode")
        ->check(CLI::IsMember({"simplified", "general"}));
    cmd->add_option("--max-dofs", opt.max_dofs, "stop once the vertex count reaches this")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tol", opt.tol, "stop once the total estimate drops below this");
    cmd->add_option("--quad-area", opt.quad_area, "quadrature degree for area terms")
        ->check(CLI::Range(1, 30));
    cmd->add_option("--quad-edge", opt.quad_edge, "quadrature degree for edge terms")
        ->check(CLI::Range(1, 30));
    cmd->add_option("--out", opt.out_dir, "output directory");
    cmd->add_option("--snapshots", opt.snapshots,
                    "levels at which to write mesh_<L>.svg and mesh_<L>.txt")
        ->delimiter(',');
}

int run_adaptive(const RunOptions& opt, std::ostream& out) {
    namespace fs = std::filesystem;
    fs::create_directories(opt.out_dir);
    AdaptParams params;
    params.theta = opt.theta;
    params.mode = opt.mode == "general" ? EstimatorMode::General : EstimatorMode::Simplified;
    params.max_dofs = opt.max_dofs;
    params.tol = opt.tol;
    params.area_degree = opt.quad_area;
    params.edge_degree = opt.quad_edge;
    std::set<int> snaps(opt.snapshots.begin(), opt.snapshots.end());
    params.observer = [&](int level, const Mesh& mesh, const DiscreteSolution&,
                          const EstimatorBreakdown& est) {
        if (!snaps.count(level)) return;
        std::string base = opt.out_dir + "/mesh_" + std::to_string(level);
        write_svg(mesh, est.marking, base + ".svg");
        write_mesh(mesh, base + ".txt");
    };

    AdaptHistory history = disk_benchmark(params);
    write_history_csv(history, opt.out_dir + "/history.csv");

    const LevelRecord& last = history.levels.back();
    out << "levels = " << history.levels.size() << "\n";
    out << "final ndof = " << last.ndof << "\n";
    out << "final estimate = " << format_double_shortest(last.total) << "\n";
    out << "final error = " << format_double_shortest(last.error) << "\n";
    out << "final efficiency = " << format_double_shortest(last.efficiency) << "\n";
    out << "history written to " << opt.out_dir << "/history.csv\n";
    return 0;
}

int run_solve(const std::string& mesh_path, const std::string& config_path,
              const std::string& mode, std::ostream& out) {
    SolveConfig cfg = parse_problem_config(config_path);
    Mesh mesh = read_mesh(mesh_path, cfg.geometry);

    SparseOperator K = assemble_stiffness(mesh);
    std::vector<double> F = assemble_load(cfg.problem.f, mesh);
    NodalField chi_h = nodal_interpolate(cfg.problem.chi, mesh);
    NodalField g_h;
    g_h.values.assign(mesh.vertices.size(), 0.0);
    for (int z = 0; z < mesh.num_vertices(); ++z)
        if (mesh.vertex_on_boundary[z]) g_h.values[z] = cfg.problem.g.value(mesh.vertices[z]);

    DiscreteSolution sol = solve_obstacle_assembled(K, F, chi_h, g_h, mesh, {});
    NodalField sigma = compute_sigma_h(sol.u, F, K, mesh);
    EdgeSet edges = edge_topology(mesh);
    EstimatorMode emode = mode == "general" ? EstimatorMode::General : EstimatorMode::Simplified;
    EstimatorBreakdown est = total_estimator(emode, cfg.problem, sol.u, sigma, mesh, edges);

    int interior = 0, active = 0;
    for (int z = 0; z < mesh.num_vertices(); ++z) {
        if (!mesh.vertex_on_boundary[z]) ++interior;
        if (sol.active[z]) ++active;
    }
    out << "ndof = " << mesh.num_vertices() << ", interior = " << interior << "\n";
    out << "pdas iterations = " << sol.iterations << ", active = " << active
        << ", residual = " << format_double_shortest(sol.residual_norm) << "\n";
    if (mesh.num_vertices() <= 32) {
        for (int z = 0; z < mesh.num_vertices(); ++z) {
            out << "u_h(" << format_double_shortest(mesh.vertices[z].x) << ", "
                << format_double_shortest(mesh.vertices[z].y)
                << ") = " << format_double_shortest(sol.u.values[z]) << "\n";
        }
    }
    out << "estimator total = " << format_double_shortest(est.total()) << "\n";
    out << "eta_f = " << format_double_shortest(std::sqrt(est.eta_f_sq))
        << ", eta_J = " << format_double_shortest(std::sqrt(est.eta_jump_sq))
        << ", eta_sigma = " << format_double_shortest(std::sqrt(est.eta_sigma_sq)) << "\n";
    if (cfg.problem.has_exact() && cfg.problem.exact.has_gradient())
        out << "energy error = "
            << format_double_shortest(exact_energy_error(cfg.problem.exact, sol.u, mesh)) << "\n";
    return 0;
}

}  // namespace

SolveConfig parse_problem_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path);
    SolveConfig cfg;
    bool have_f = false, have_chi = false, have_g = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        std::size_t eq = text.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected key = value");
        std::string key = trim(text.substr(0, eq));
        std::string value = trim(text.substr(eq + 1));
        if (key == "f") {
            cfg.problem.f = make_field(value);
            have_f = true;
        } else if (key == "chi") {
            cfg.problem.chi = make_field(value);
            have_chi = true;
        } else if (key == "g") {
            cfg.problem.g = make_field(value);
            have_g = true;
        } else if (key == "exact") {
            cfg.problem.exact = make_field(value);
        } else if (key == "geometry") {
            if (value == "polygonal")
                cfg.geometry = GeometryTag::Polygonal;
            else if (value == "unit_circle")
                cfg.geometry = GeometryTag::UnitCircle;
            else
                throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                            ": unknown geometry '" + value + "'");
        } else {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": unknown key '" + key + "'");
        }
    }
    if (!have_f || !have_chi || !have_g)
        throw std::invalid_argument(path + ": config needs f, chi and g");
    return cfg;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"adaptive P1 finite element solver for the elliptic obstacle problem"};
    app.require_subcommand(1);

    RunOptions disk_opt;
    CLI::App* disk = app.add_subcommand("disk", "adaptive run of the unit-disk benchmark");
    disk->add_option("--theta", disk_opt.theta, "bulk marking fraction")
        ->check(CLI::Range(0.0, 1.0));
    add_common_options(disk, disk_opt);

    RunOptions uniform_opt;
    CLI::App* uniform =
        app.add_subcommand("uniform", "uniform-refinement run of the unit-disk benchmark");
    add_common_options(uniform, uniform_opt);

    std::string mesh_path, config_path, solve_mode = "simplified";
    CLI::App* solve = app.add_subcommand("solve", "solve on a fixed mesh");
    solve->add_option("mesh", mesh_path, "mesh file")->required();
    solve->add_option("config", config_path, "problem config file")->required();
    solve->add_option("--mode", solve_mode, "estimator mode")
        ->check(CLI::IsMember({"simplified", "general"}));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 1;
    }

    try {
        if (disk->parsed()) return run_adaptive(disk_opt, out);
        if (uniform->parsed()) {
            uniform_opt.theta = 1.0;
            return run_adaptive(uniform_opt, out);
        }
        return run_solve(mesh_path, config_path, solve_mode, out);
    } catch (const SolverError& e) {
        err << "solver failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace oafem
