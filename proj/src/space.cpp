#include "oafem/space.hpp"

#include <stdexcept>
#include <string>

namespace oafem {

namespace {

void check_size(const NodalField& w, const Mesh& mesh, const char* what) {
    if (w.size() != mesh.num_vertices())
        throw std::invalid_argument(std::string(what) + ": field has " +
                                    std::to_string(w.size()) + " values but mesh has " +
                                    std::to_string(mesh.num_vertices()) + " vertices");
}

}  // namespace

std::array<double, 3> barycentric(const Mesh& mesh, int t, Vec2 p) {
    auto c = mesh.corners(t);
    double a2 = signed_area2(c[0], c[1], c[2]);
    return {signed_area2(p, c[1], c[2]) / a2, signed_area2(c[0], p, c[2]) / a2,
            signed_area2(c[0], c[1], p) / a2};
}

NodalField nodal_interpolate(const ScalarField& field, const Mesh& mesh) {
    if (!field.value) throw std::invalid_argument("nodal_interpolate: field has no value callback");
    NodalField w;
    w.values.resize(mesh.vertices.size());
    for (int v = 0; v < mesh.num_vertices(); ++v) w.values[v] = field.value(mesh.vertices[v]);
    return w;
}

double eval_p1(const NodalField& w, const Mesh& mesh, int t, Vec2 p) {
    check_size(w, mesh, "eval_p1");
    auto b = barycentric(mesh, t, p);
    constexpr double tol = 1e-12;
    if (b[0] < -tol || b[1] < -tol || b[2] < -tol)
        throw std::invalid_argument("eval_p1: point lies outside triangle " + std::to_string(t));
    const auto& v = mesh.triangles[t].v;
    return b[0] * w.values[v[0]] + b[1] * w.values[v[1]] + b[2] * w.values[v[2]];
}

double eval_p1_extended(const NodalField& w, const Mesh& mesh, int t, Vec2 p) {
    check_size(w, mesh, "eval_p1_extended");
    auto b = barycentric(mesh, t, p);
    const auto& v = mesh.triangles[t].v;
    return b[0] * w.values[v[0]] + b[1] * w.values[v[1]] + b[2] * w.values[v[2]];
}

Vec2 grad_p1(const NodalField& w, const Mesh& mesh, int t) {
    check_size(w, mesh, "grad_p1");
    auto c = mesh.corners(t);
    const auto& v = mesh.triangles[t].v;
    double a2 = signed_area2(c[0], c[1], c[2]);
    Vec2 g{0.0, 0.0};
    for (int i = 0; i < 3; ++i) {
        Vec2 grad_lambda = perp(c[(i + 2) % 3] - c[(i + 1) % 3]) / a2;
        g += w.values[v[i]] * grad_lambda;
    }
    return g;
}

double lumped_inner(const NodalField& w, const NodalField& v, const Mesh& mesh) {
    check_size(w, mesh, "lumped_inner");
    check_size(v, mesh, "lumped_inner");
    double s = 0.0;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto& idx = mesh.triangles[t].v;
        double local = 0.0;
        for (int i = 0; i < 3; ++i) local += w.values[idx[i]] * v.values[idx[i]];
        s += triangle_area(mesh, t) / 3.0 * local;
    }
    return s;
}

std::vector<double> lumped_vertex_mass(const Mesh& mesh) {
    std::vector<double> m(mesh.vertices.size(), 0.0);
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        double third = triangle_area(mesh, t) / 3.0;
        for (int i = 0; i < 3; ++i) m[mesh.triangles[t].v[i]] += third;
    }
    return m;
}

}  // namespace oafem
