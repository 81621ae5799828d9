#include "oafem/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oafem {

std::vector<std::pair<double, double>> gauss_legendre_01(int n) {
    if (n < 1 || n > 64)
        throw std::invalid_argument("gauss_legendre_01: point count " + std::to_string(n) +
                                    " out of range");
    std::vector<std::pair<double, double>> out(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[n - 1 - i] = {(1.0 + x) / 2.0, w / 2.0};  // x > 0 for small i
        out[i] = {(1.0 - x) / 2.0, w / 2.0};
    }
    return out;
}

int gauss_points_for_degree(int degree) {
    if (degree < 0) throw std::invalid_argument("gauss_points_for_degree: negative degree");
    return std::max(1, (degree + 2) / 2);
}

QuadratureRule quadrature_rule(int degree) {
    if (degree < 1 || degree > 30)
        throw std::invalid_argument("quadrature_rule: degree " + std::to_string(degree) +
                                    " outside supported range 1..30");
    QuadratureRule rule;
    rule.degree = degree;
    if (degree == 1) {
        rule.points = {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0}};
        return rule;
    }
    if (degree == 2) {
        rule.points = {{0.5, 0.5, 0.0, 1.0 / 3.0},
                       {0.0, 0.5, 0.5, 1.0 / 3.0},
                       {0.5, 0.0, 0.5, 1.0 / 3.0}};
        return rule;
    }
    // Collapsed product: map (s, t) in the unit square to (x, y) = (s, t(1-s))
    // with Jacobian (1-s).  The extra factor raises the required 1D degree in
    // the s direction by one.
    auto gl = gauss_legendre_01(gauss_points_for_degree(degree + 1));
    rule.points.reserve(gl.size() * gl.size());
    for (const auto& [s, ws] : gl) {
        for (const auto& [t, wt] : gl) {
            double x = s;
            double y = t * (1.0 - s);
            rule.points.push_back({1.0 - x - y, x, y, 2.0 * ws * wt * (1.0 - s)});
        }
    }
    return rule;
}

double integrate(const Mesh& mesh, int t, const QuadratureRule& rule,
                 const std::function<double(Vec2)>& fn) {
    auto c = mesh.corners(t);
    double area = oafem::triangle_area(c[0], c[1], c[2]);
    double s = 0.0;
    for (const auto& q : rule.points) {
        Vec2 p = q.b0 * c[0] + q.b1 * c[1] + q.b2 * c[2];
        s += q.w * fn(p);
    }
    return area * s;
}

double integrate_edge(Vec2 a, Vec2 b, int degree, const std::function<double(Vec2)>& fn) {
    auto gl = gauss_legendre_01(gauss_points_for_degree(degree));
    double s = 0.0;
    for (const auto& [x, w] : gl) s += w * fn(a + x * (b - a));
    return distance(a, b) * s;
}

}  // namespace oafem
