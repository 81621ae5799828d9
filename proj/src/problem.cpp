#include "oafem/problem.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace oafem {

ScalarField zero_field() {
    ScalarField f;
    f.value = [](Vec2) { return 0.0; };
    f.gradient = [](Vec2) { return Vec2{0.0, 0.0}; };
    return f;
}

ScalarField constant_field(double c) {
    ScalarField f;
    f.value = [c](Vec2) { return c; };
    f.gradient = [](Vec2) { return Vec2{0.0, 0.0}; };
    return f;
}

ScalarField linear_field(double a, double b, double c) {
    ScalarField f;
    f.value = [a, b, c](Vec2 p) { return a + b * p.x + c * p.y; };
    f.gradient = [b, c](Vec2) { return Vec2{b, c}; };
    return f;
}

ScalarField quadratic_bowl_field() {
    ScalarField f;
    f.value = [](Vec2 p) { return 1.0 - 2.0 * (p.x * p.x + p.y * p.y); };
    f.gradient = [](Vec2 p) { return Vec2{-4.0 * p.x, -4.0 * p.y}; };
    return f;
}

double disk_contact_radius() { return (std::sqrt(2.0) - 1.0) / std::sqrt(2.0); }

ScalarField disk_load_field() {
    const double r0 = disk_contact_radius();
    ScalarField f;
    f.value = [r0](Vec2 p) {
        double r = norm(p);
        return r < r0 ? 0.0 : 4.0 * r0 / r;
    };
    return f;
}

ScalarField disk_exact_field() {
    const double r0 = disk_contact_radius();
    ScalarField f;
    f.value = [r0](Vec2 p) {
        double r = norm(p);
        return r < r0 ? 1.0 - 2.0 * r * r : 4.0 * r0 * (1.0 - r);
    };
    f.gradient = [r0](Vec2 p) {
        double r = norm(p);
        if (r < r0) return Vec2{-4.0 * p.x, -4.0 * p.y};
        return Vec2{-4.0 * r0 * p.x / r, -4.0 * r0 * p.y / r};
    };
    return f;
}

namespace {

std::vector<double> parse_params(const std::string& text, const std::string& spec) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                      : comma - pos);
        double v = 0.0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
            throw std::invalid_argument("bad field parameter '" + tok + "' in '" + spec + "'");
        out.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

ScalarField make_field(const std::string& spec) {
    std::size_t colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    std::vector<double> params;
    if (colon != std::string::npos) params = parse_params(spec.substr(colon + 1), spec);

    auto expect = [&](std::size_t n) {
        if (params.size() != n)
            throw std::invalid_argument("field '" + name + "' takes " + std::to_string(n) +
                                        " parameters, got " + std::to_string(params.size()));
    };
    if (name == "zero") {
        expect(0);
        return zero_field();
    }
    if (name == "constant") {
        expect(1);
        return constant_field(params[0]);
    }
    if (name == "linear") {
        expect(3);
        return linear_field(params[0], params[1], params[2]);
    }
    if (name == "quadratic_bowl") {
        expect(0);
        return quadratic_bowl_field();
    }
    if (name == "disk_load") {
        expect(0);
        return disk_load_field();
    }
    if (name == "disk_exact") {
        expect(0);
        return disk_exact_field();
    }
    throw std::invalid_argument("unknown field '" + name + "'");
}

ProblemData disk_problem() {
    ProblemData p;
    p.f = disk_load_field();
    p.chi = quadratic_bowl_field();
    p.g = disk_exact_field();
    p.exact = disk_exact_field();
    return p;
}

}  // namespace oafem
