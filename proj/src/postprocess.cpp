#include "oafem/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "oafem/quadrature.hpp"

namespace oafem {

namespace {

// Geometry of a boundary triangle relative to its boundary edge: tangent t
// from a to b, inward normal n, apex foot parameter s3, and for each of the
// two sub-triangles the unit normal of the opposite edge oriented into the
// half-plane of n.
struct EdgeFrame {
    Vec2 a, b, c;
    Vec2 t, n;
    double he = 0.0;
    double s3 = 0.0;
    Vec2 m[2];
    double mdotn[2] = {0.0, 0.0};
};

EdgeFrame make_frame(const Mesh& mesh, int tri, int local_edge) {
    if (tri < 0 || tri >= mesh.num_triangles())
        throw std::invalid_argument("boundary triangle index out of range");
    if (local_edge < 0 || local_edge > 2)
        throw std::invalid_argument("local edge index out of range");
    const auto& v = mesh.triangles[tri].v;
    EdgeFrame f;
    f.a = mesh.vertices[v[(local_edge + 1) % 3]];
    f.b = mesh.vertices[v[(local_edge + 2) % 3]];
    f.c = mesh.vertices[v[local_edge]];
    f.he = distance(f.a, f.b);
    f.t = (f.b - f.a) / f.he;
    f.n = perp(f.t);  // counterclockwise triangle: +90 degrees points inward
    f.s3 = dot(f.c - f.a, f.t);
    Vec2 endpoints[2] = {f.a, f.b};
    for (int i = 0; i < 2; ++i) {
        Vec2 d = f.c - endpoints[i];
        Vec2 m = perp(d) / norm(d);
        double mn = dot(m, f.n);
        if (mn < 0.0) {
            m = {-m.x, -m.y};
            mn = -mn;
        }
        f.m[i] = m;
        f.mdotn[i] = mn;
    }
    return f;
}

int pick_subtriangle(const EdgeFrame& f, double s) {
    int i = s <= f.s3 ? 1 : 2;
    // A right angle at the picked endpoint degenerates that sub-triangle to a
    // line; both expressions agree there, so fall back to the other one.
    if (f.mdotn[i - 1] <= 1e-12) i = 3 - i;
    if (f.mdotn[i - 1] <= 1e-12)
        throw std::invalid_argument("degenerate boundary triangle");
    return i;
}

FootPointData foot_points_frame(const EdgeFrame& f, Vec2 z) {
    double s = dot(z - f.a, f.t);
    double h1 = dot(z - f.a, f.n);
    if (h1 < 0.0) {
        if (h1 < -1e-9 * f.he)
            throw std::invalid_argument("foot_points: point lies outside the triangle");
        h1 = 0.0;
    }
    FootPointData fp;
    fp.subtriangle = pick_subtriangle(f, s);
    const int k = fp.subtriangle - 1;
    double h2 = dot(f.m[k], f.c - z) / f.mdotn[k];
    if (h2 < 0.0) h2 = 0.0;
    fp.z1 = f.a + s * f.t;
    fp.z2 = z + h2 * f.n;
    fp.h1 = h1;
    fp.h2 = h2;
    return fp;
}

bool on_boundary_segment(const EdgeFrame& f, double s) {
    return s >= -1e-12 * f.he && s <= (1.0 + 1e-12) * f.he;
}

double tangential_g_derivative(const ScalarField& g, const EdgeFrame& f, Vec2 z1) {
    if (g.has_gradient()) return dot(g.gradient(z1), f.t);
    double step = 1e-6 * f.he;
    return (g.value(z1 + step * f.t) - g.value(z1 - step * f.t)) / (2.0 * step);
}

std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& poly,
                                 const std::function<double(Vec2)>& keep_nonneg) {
    std::vector<Vec2> out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 p = poly[i];
        Vec2 q = poly[(i + 1) % n];
        double dp = keep_nonneg(p);
        double dq = keep_nonneg(q);
        if (dp >= 0.0) out.push_back(p);
        if ((dp < 0.0) != (dq < 0.0)) out.push_back(p + (dp / (dp - dq)) * (q - p));
    }
    return out;
}

double polygon_area(const std::vector<Vec2>& poly) {
    double a2 = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i)
        a2 += cross(poly[i], poly[(i + 1) % poly.size()]);
    return 0.5 * a2;
}

}  // namespace

FootPointData foot_points(const Mesh& mesh, int tri, int local_edge, Vec2 z) {
    return foot_points_frame(make_frame(mesh, tri, local_edge), z);
}

double tilde_eval(const NodalField& u, const ScalarField& g, const Mesh& mesh, int tri,
                  int local_edge, Vec2 z) {
    if (!g.value) throw std::invalid_argument("tilde_eval: boundary field has no value callback");
    EdgeFrame f = make_frame(mesh, tri, local_edge);
    FootPointData fp = foot_points_frame(f, z);
    double s = dot(fp.z1 - f.a, f.t);
    double ustar1 = on_boundary_segment(f, s) ? g.value(fp.z1)
                                              : eval_p1_extended(u, mesh, tri, fp.z1);
    if (fp.h1 + fp.h2 <= 0.0) return ustar1;  // z lies on the boundary edge at the apex foot
    double ustar2 = eval_p1_extended(u, mesh, tri, fp.z2);
    return (fp.h2 * ustar1 + fp.h1 * ustar2) / (fp.h1 + fp.h2);
}

double integrate_boundary_triangle(const NodalField& u, const ScalarField& g, const Mesh& mesh,
                                   int tri, int local_edge, int degree,
                                   const std::function<double(Vec2, double, Vec2)>& fn) {
    if (!g.value)
        throw std::invalid_argument("integrate_boundary_triangle: boundary field has no value");
    EdgeFrame f = make_frame(mesh, tri, local_edge);
    auto c = mesh.corners(tri);
    const double area = oafem::triangle_area(c[0], c[1], c[2]);
    auto rule = quadrature_rule(degree);

    // Cut parameters along the tangent direction: the strip boundaries of the
    // boundary edge (0 and he) and the apex foot (s3), each passing through a
    // triangle vertex.
    double smin = std::min({0.0, f.he, f.s3});
    double smax = std::max({0.0, f.he, f.s3});
    std::vector<double> cuts{smin};
    for (double cut : {0.0, f.s3, f.he})
        if (cut > smin + 1e-13 * f.he && cut < smax - 1e-13 * f.he) cuts.push_back(cut);
    cuts.push_back(smax);
    std::sort(cuts.begin(), cuts.end());

    double gh_a = eval_p1_extended(u, mesh, tri, f.a);
    double gh_b = eval_p1_extended(u, mesh, tri, f.b);

    double total = 0.0;
    const std::vector<Vec2> triangle{c[0], c[1], c[2]};
    for (std::size_t piece = 0; piece + 1 < cuts.size(); ++piece) {
        const double lo = cuts[piece];
        const double hi = cuts[piece + 1];
        if (hi - lo <= 1e-13 * f.he) continue;
        auto poly = clip_halfplane(triangle, [&](Vec2 p) { return dot(p - f.a, f.t) - lo; });
        poly = clip_halfplane(poly, [&](Vec2 p) { return hi - dot(p - f.a, f.t); });
        if (poly.size() < 3 || std::abs(polygon_area(poly)) <= 1e-14 * area) continue;

        const double mid = 0.5 * (lo + hi);
        const bool in_strip = mid > 0.0 && mid < f.he;
        int k = 0;
        Vec2 grad_h2{0.0, 0.0};
        if (in_strip) {
            k = pick_subtriangle(f, mid) - 1;
            grad_h2 = (-1.0 / f.mdotn[k]) * f.m[k];
        }
        for (std::size_t j = 1; j + 1 < poly.size(); ++j) {
            Vec2 p0 = poly[0], p1 = poly[j], p2 = poly[j + 1];
            double sub_area = oafem::triangle_area(p0, p1, p2);
            if (sub_area <= 0.0) continue;
            for (const auto& q : rule.points) {
                Vec2 p = q.b0 * p0 + q.b1 * p1 + q.b2 * p2;
                double dev = 0.0;
                Vec2 grad_dev{0.0, 0.0};
                if (in_strip) {
                    double s = dot(p - f.a, f.t);
                    double h1 = std::max(0.0, dot(p - f.a, f.n));
                    double h2 = std::max(0.0, dot(f.m[k], f.c - p) / f.mdotn[k]);
                    double hsum = h1 + h2;
                    if (hsum > 0.0) {
                        Vec2 z1 = f.a + s * f.t;
                        double big_g = g.value(z1) - (gh_a + s / f.he * (gh_b - gh_a));
                        double big_gp = tangential_g_derivative(g, f, z1) - (gh_b - gh_a) / f.he;
                        dev = h2 / hsum * big_g;
                        grad_dev = (big_g / (hsum * hsum)) * (h1 * grad_h2 - h2 * f.n) +
                                   (h2 / hsum * big_gp) * f.t;
                    }
                }
                total += sub_area * q.w * fn(p, dev, grad_dev);
            }
        }
    }
    return total;
}

double tilde_grad_deviation_sq(const NodalField& u, const ScalarField& g, const Mesh& mesh,
                               int tri, int local_edge, int degree) {
    return integrate_boundary_triangle(u, g, mesh, tri, local_edge, degree,
                                       [](Vec2, double, Vec2 gd) { return norm_sq(gd); });
}

double eta_g(const NodalField& u, const ScalarField& g, const Mesh& mesh, const EdgeSet& edges,
             int degree) {
    double sum = 0.0;
    for (const auto& e : edges.boundary)
        sum += tilde_grad_deviation_sq(u, g, mesh, e.tri, e.local, degree);
    return std::sqrt(sum);
}

}  // namespace oafem
