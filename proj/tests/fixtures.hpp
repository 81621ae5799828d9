#pragma once

#include <random>

#include "oafem/mesh.hpp"
#include "oafem/problem.hpp"

namespace fixtures {

// Unit square split along the diagonal from (0,0) to (1,1).
inline oafem::Mesh unit_square_two() {
    return oafem::build_mesh({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}},
                             {{{0, 1, 2}}, {{0, 2, 3}}});
}

// Unit square with a center vertex and four triangles.
inline oafem::Mesh criss_cross() {
    return oafem::build_mesh(
        {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}, {0.5, 0.5}},
        {{{0, 1, 4}}, {{1, 2, 4}}, {{2, 3, 4}}, {{3, 0, 4}}});
}

inline oafem::Mesh single_triangle() {
    return oafem::build_mesh({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}, {{{0, 1, 2}}});
}

// n x n cells of the unit square, each split along its southwest-northeast
// diagonal; (n-1)^2 interior vertices.
inline oafem::Mesh grid(int n) {
    std::vector<oafem::Vec2> coords;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            coords.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
    std::vector<std::array<int, 3>> tris;
    auto id = [n](int i, int j) { return i + (n + 1) * j; };
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    }
    return oafem::build_mesh(std::move(coords), std::move(tris));
}

// Random counterclockwise triangle with all angles well away from 0 and 180
// degrees, with the edge between the first two vertices horizontal-ish.
inline std::array<oafem::Vec2, 3> random_triangle(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    oafem::Vec2 a{uni(rng) * 2.0 - 1.0, uni(rng) * 2.0 - 1.0};
    double len = 0.3 + 1.2 * uni(rng);
    double dir = uni(rng) * 6.283185307179586;
    oafem::Vec2 t{std::cos(dir), std::sin(dir)};
    oafem::Vec2 b = a + len * t;
    // Apex somewhere above the edge, horizontal position may fall outside it.
    double s = -0.8 + 2.6 * uni(rng);
    double h = (0.25 + 1.3 * uni(rng)) * len;
    oafem::Vec2 c = a + s * len * t + h * oafem::perp(t);
    return {a, b, c};
}

inline oafem::Mesh boundary_triangle_mesh(const std::array<oafem::Vec2, 3>& corners) {
    return oafem::build_mesh({corners[0], corners[1], corners[2]}, {{{0, 1, 2}}});
}

// Seeded small obstacle problem on a grid mesh, feasible by construction.
struct SmallProblem {
    oafem::Mesh mesh;
    oafem::ProblemData problem;
};

inline SmallProblem seeded_problem(unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    int which = static_cast<int>(seed % 3);
    oafem::Mesh mesh = which == 0 ? criss_cross() : (which == 1 ? grid(3) : grid(4));

    oafem::ProblemData p;
    double f0 = -35.0 + 40.0 * uni(rng);
    if (uni(rng) < 0.5) {
        p.f = oafem::constant_field(f0);
    } else {
        p.f = oafem::linear_field(f0, 8.0 * uni(rng) - 4.0, 8.0 * uni(rng) - 4.0);
    }
    double ga = 2.0 * uni(rng) - 1.0, gb = 2.0 * uni(rng) - 1.0, gc = 2.0 * uni(rng) - 1.0;
    p.g = oafem::linear_field(ga, gb, gc);

    // Obstacle below the boundary data at the boundary vertices.
    double min_g = 1e300;
    for (int z = 0; z < mesh.num_vertices(); ++z)
        if (mesh.vertex_on_boundary[z]) min_g = std::min(min_g, p.g.value(mesh.vertices[z]));
    if (uni(rng) < 0.5) {
        p.chi = oafem::constant_field(min_g - 0.05 - 1.5 * uni(rng));
    } else {
        double depth = 0.05 + 1.5 * uni(rng);
        double curv = 4.0 * uni(rng);
        double top = min_g - depth;
        p.chi.value = [top, curv](oafem::Vec2 x) {
            double dx = x.x - 0.5, dy = x.y - 0.5;
            return top - curv * (dx * dx + dy * dy);
        };
        p.chi.gradient = [curv](oafem::Vec2 x) {
            return oafem::Vec2{-2.0 * curv * (x.x - 0.5), -2.0 * curv * (x.y - 0.5)};
        };
    }
    return {std::move(mesh), std::move(p)};
}

}  // namespace fixtures
