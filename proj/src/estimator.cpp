#include "oafem/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "oafem/parallel.hpp"
#include "oafem/postprocess.hpp"
#include "oafem/quadrature.hpp"

namespace oafem {

namespace {

double p1_at(const NodalField& w, const Mesh& mesh, int t, double b0, double b1, double b2) {
    const auto& v = mesh.triangles[t].v;
    return b0 * w.values[v[0]] + b1 * w.values[v[1]] + b2 * w.values[v[2]];
}

double tangential_slope(const ScalarField& field, Vec2 p, Vec2 tangent, double step) {
    if (field.has_gradient()) return dot(field.gradient(p), tangent);
    return (field.value(p + step * tangent) - field.value(p - step * tangent)) / (2.0 * step);
}

// h_e int_e ((field - vertex interpolant)')^2 ds along the segment a-b.
double edge_oscillation(const ScalarField& field, Vec2 a, Vec2 b, int degree) {
    if (!field.value) throw std::invalid_argument("edge oscillation: field has no value");
    double he = distance(a, b);
    Vec2 tangent = (b - a) / he;
    double slope_h = (field.value(b) - field.value(a)) / he;
    double step = 1e-6 * he;
    double integral = integrate_edge(a, b, degree, [&](Vec2 p) {
        double d = tangential_slope(field, p, tangent, step) - slope_h;
        return d * d;
    });
    return he * integral;
}

}  // namespace

double eta_f_T(const ScalarField& f, const NodalField& sigma, const Mesh& mesh, int t,
               int degree) {
    if (!f.value) throw std::invalid_argument("eta_f_T: field has no value");
    auto rule = quadrature_rule(degree);
    auto c = mesh.corners(t);
    double area = oafem::triangle_area(c[0], c[1], c[2]);
    double s = 0.0;
    for (const auto& q : rule.points) {
        Vec2 p = q.b0 * c[0] + q.b1 * c[1] + q.b2 * c[2];
        double d = f.value(p) - p1_at(sigma, mesh, t, q.b0, q.b1, q.b2);
        s += q.w * d * d;
    }
    return triangle_diameter(mesh, t) * std::sqrt(area * s);
}

double eta_jump_e(const NodalField& u, const Mesh& mesh, const InteriorEdge& e) {
    Vec2 jump = grad_p1(u, mesh, e.tri_plus) - grad_p1(u, mesh, e.tri_minus);
    return e.length * std::abs(dot(jump, e.normal_plus));
}

double eta_sigma_T(const NodalField& sigma, const Mesh& mesh, int t) {
    double h = triangle_diameter(mesh, t);
    return h * h * norm(grad_p1(sigma, mesh, t)) * std::sqrt(triangle_area(mesh, t));
}

double boundary_osc_g(const ScalarField& g, const Mesh& mesh, const BoundaryEdge& e, int degree) {
    return edge_oscillation(g, mesh.vertices[e.a], mesh.vertices[e.b], degree);
}

double obstacle_osc_grad_T(const ScalarField& chi, const NodalField& chi_h, const Mesh& mesh,
                           int t, int degree) {
    if (!chi.has_gradient())
        throw std::invalid_argument("obstacle_osc_grad_T: obstacle needs an analytic gradient");
    Vec2 gh = grad_p1(chi_h, mesh, t);
    auto rule = quadrature_rule(degree);
    return integrate(mesh, t, rule, [&](Vec2 p) { return norm_sq(chi.gradient(p) - gh); });
}

double obstacle_osc_edge(const ScalarField& chi, const Mesh& mesh, const BoundaryEdge& e,
                         int degree) {
    return edge_oscillation(chi, mesh.vertices[e.a], mesh.vertices[e.b], degree);
}

GeneralExtras general_extras(const ProblemData& problem, const NodalField& u,
                             const NodalField& sigma, const Mesh& mesh, const EdgeSet& edges,
                             const ElementClassification& cls, int degree) {
    if (!problem.chi.value || !problem.chi.has_gradient())
        throw std::invalid_argument("general_extras: obstacle needs value and gradient");
    const ScalarField& chi = problem.chi;
    NodalField chi_h = nodal_interpolate(chi, mesh);
    auto rule = quadrature_rule(degree);

    // First boundary edge of each triangle, if any (meshes refined here keep
    // at most one boundary edge per triangle).
    std::vector<int> boundary_local(mesh.triangles.size(), -1);
    for (const auto& e : edges.boundary)
        if (boundary_local[e.tri] < 0) boundary_local[e.tri] = e.local;

    GeneralExtras out;

    const std::size_t nt = mesh.triangles.size();
    std::vector<double> pos_part(nt, 0.0);
    parallel_chunks(nt, [&](std::size_t tb, std::size_t te) {
        for (std::size_t t = tb; t < te; ++t) {
            const int ti = static_cast<int>(t);
            Vec2 grad_u = grad_p1(u, mesh, ti);
            if (boundary_local[t] >= 0) {
                pos_part[t] = integrate_boundary_triangle(
                    u, problem.g, mesh, ti, boundary_local[t], degree,
                    [&](Vec2 p, double dev, Vec2 grad_dev) {
                        double phi = chi.value(p) - (eval_p1_extended(u, mesh, ti, p) + dev);
                        if (phi <= 0.0) return 0.0;
                        return norm_sq(chi.gradient(p) - (grad_u + grad_dev));
                    });
            } else {
                pos_part[t] = integrate(mesh, ti, rule, [&](Vec2 p) {
                    double phi = chi.value(p) - eval_p1_extended(u, mesh, ti, p);
                    if (phi <= 0.0) return 0.0;
                    return norm_sq(chi.gradient(p) - grad_u);
                });
            }
        }
    });
    for (double v : pos_part) out.pos_part_sq += v;

    std::vector<int> contact_tris;
    contact_tris.reserve(cls.free_boundary.size() + cls.full_contact.size());
    for (int t = 0; t < mesh.num_triangles(); ++t)
        if (cls.of_element[t] != ContactClass::NoContact) contact_tris.push_back(t);
    std::vector<double> contact(contact_tris.size(), 0.0);
    parallel_chunks(contact_tris.size(), [&](std::size_t cb, std::size_t ce) {
        for (std::size_t i = cb; i < ce; ++i) {
            int t = contact_tris[i];
            contact[i] = integrate(mesh, t, rule, [&](Vec2 p) {
                auto bc = barycentric(mesh, t, p);
                double neg = std::max(p1_at(chi_h, mesh, t, bc[0], bc[1], bc[2]) - chi.value(p),
                                      0.0);
                double s = p1_at(sigma, mesh, t, bc[0], bc[1], bc[2]);
                return -s * neg;
            });
        }
    });
    for (double v : contact) out.contact_term += v;

    NodalField u_minus_chi;
    u_minus_chi.values.resize(u.values.size());
    for (std::size_t i = 0; i < u.values.size(); ++i)
        u_minus_chi.values[i] = u.values[i] - chi_h.values[i];
    for (int id : cls.fb_edge_ids) {
        const InteriorEdge& e = edges.interior[id];
        Vec2 jump = grad_p1(u_minus_chi, mesh, e.tri_plus) - grad_p1(u_minus_chi, mesh, e.tri_minus);
        double j = dot(jump, e.normal_plus);
        out.fb_jump_sq += e.length * e.length * j * j;
    }
    return out;
}

bool check_cor45_hypothesis(const ProblemData& problem, const NodalField& u, const Mesh& mesh,
                            const EdgeSet& edges) {
    if (!problem.chi.value || !problem.g.value)
        throw std::invalid_argument("check_cor45_hypothesis: missing field callbacks");
    auto rule = quadrature_rule(8);
    for (const auto& e : edges.boundary) {
        auto c = mesh.corners(e.tri);
        double max_chi = std::max({problem.chi.value(c[0]), problem.chi.value(c[1]),
                                   problem.chi.value(c[2])});
        for (const auto& q : rule.points) {
            Vec2 p = q.b0 * c[0] + q.b1 * c[1] + q.b2 * c[2];
            max_chi = std::max(max_chi, problem.chi.value(p));
        }
        Vec2 pa = mesh.vertices[e.a];
        Vec2 pb = mesh.vertices[e.b];
        double min_star = std::min(problem.g.value(pa), problem.g.value(pb));
        for (int k = 1; k < 33; ++k) {
            Vec2 p = pa + (k / 33.0) * (pb - pa);
            min_star = std::min(min_star, problem.g.value(p));
        }
        const auto& v = mesh.triangles[e.tri].v;
        for (int i = 0; i < 3; ++i) min_star = std::min(min_star, u.values[v[i]]);
        if (max_chi > min_star + 1e-12) return false;
    }
    return true;
}

double EstimatorBreakdown::total() const { return std::sqrt(total_sq); }

EstimatorBreakdown total_estimator(EstimatorMode mode, const ProblemData& problem,
                                   const NodalField& u, const NodalField& sigma, const Mesh& mesh,
                                   const EdgeSet& edges, int area_degree, int edge_degree) {
    EstimatorBreakdown out;
    out.mode = mode;
    const std::size_t nt = mesh.triangles.size();
    NodalField chi_h = nodal_interpolate(problem.chi, mesh);
    const int chi_degree = std::max(5, area_degree + 1);

    std::vector<double> ef(nt, 0.0), es(nt, 0.0), oc(nt, 0.0);
    parallel_chunks(nt, [&](std::size_t tb, std::size_t te) {
        for (std::size_t t = tb; t < te; ++t) {
            const int ti = static_cast<int>(t);
            double a = eta_f_T(problem.f, sigma, mesh, ti, area_degree);
            double b = eta_sigma_T(sigma, mesh, ti);
            ef[t] = a * a;
            es[t] = b * b;
            oc[t] = obstacle_osc_grad_T(problem.chi, chi_h, mesh, ti, chi_degree);
        }
    });

    std::vector<double> ej(edges.interior.size(), 0.0);
    parallel_chunks(edges.interior.size(), [&](std::size_t eb, std::size_t ee) {
        for (std::size_t e = eb; e < ee; ++e) {
            double j = eta_jump_e(u, mesh, edges.interior[e]);
            ej[e] = j * j;
        }
    });

    std::vector<double> og(edges.boundary.size(), 0.0), oce(edges.boundary.size(), 0.0);
    parallel_chunks(edges.boundary.size(), [&](std::size_t eb, std::size_t ee) {
        for (std::size_t e = eb; e < ee; ++e) {
            og[e] = boundary_osc_g(problem.g, mesh, edges.boundary[e], edge_degree);
            oce[e] = obstacle_osc_edge(problem.chi, mesh, edges.boundary[e], edge_degree);
        }
    });

    out.marking.assign(nt, 0.0);
    for (std::size_t t = 0; t < nt; ++t) {
        out.eta_f_sq += ef[t];
        out.eta_sigma_sq += es[t];
        out.osc_chi_grad_sq += oc[t];
        out.marking[t] = ef[t] + es[t] + oc[t];
    }
    for (std::size_t e = 0; e < edges.interior.size(); ++e) {
        out.eta_jump_sq += ej[e];
        out.marking[edges.interior[e].tri_plus] += 0.5 * ej[e];
        out.marking[edges.interior[e].tri_minus] += 0.5 * ej[e];
    }
    for (std::size_t e = 0; e < edges.boundary.size(); ++e) {
        out.osc_g_sq += og[e];
        out.osc_chi_edge_sq += oce[e];
        out.marking[edges.boundary[e].tri] += og[e] + oce[e];
    }

    if (mode == EstimatorMode::Simplified) {
        out.total_sq = out.eta_f_sq + out.eta_jump_sq + out.eta_sigma_sq + out.osc_chi_grad_sq +
                       out.osc_g_sq + out.osc_chi_edge_sq;
        return out;
    }

    ElementClassification cls = classify_elements(u, chi_h, mesh, edges);
    GeneralExtras extras = general_extras(problem, u, sigma, mesh, edges, cls, chi_degree);
    out.pos_part_sq = extras.pos_part_sq;
    out.contact_term = extras.contact_term;
    out.fb_jump_sq = extras.fb_jump_sq;

    std::vector<double> egs(edges.boundary.size(), 0.0);
    parallel_chunks(edges.boundary.size(), [&](std::size_t eb, std::size_t ee) {
        for (std::size_t e = eb; e < ee; ++e)
            egs[e] = tilde_grad_deviation_sq(u, problem.g, mesh, edges.boundary[e].tri,
                                             edges.boundary[e].local, chi_degree);
    });
    for (double v : egs) out.eta_g_sq += v;

    out.total_sq = out.eta_f_sq + out.eta_jump_sq + out.eta_sigma_sq + out.eta_g_sq +
                   out.pos_part_sq + out.contact_term + out.fb_jump_sq + out.osc_g_sq;
    return out;
}

}  // namespace oafem
