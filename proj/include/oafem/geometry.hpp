#pragma once

#include <array>
#include <cmath>
#include <string>

namespace oafem {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double norm_sq(Vec2 a) { return a.x * a.x + a.y * a.y; }
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }  // +90 degree rotation

inline double distance(Vec2 a, Vec2 b) { return norm(b - a); }

// Twice the signed area of triangle (a,b,c); positive for counterclockwise order.
inline double signed_area2(Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); }

inline double triangle_area(Vec2 a, Vec2 b, Vec2 c) { return 0.5 * signed_area2(a, b, c); }

// Locale-independent decimal formatting.
// format_double17 keeps 17 significant digits (round-trip safe for IEEE double),
// format_double_shortest emits the shortest representation that parses back exactly.
std::string format_double17(double v);
std::string format_double_shortest(double v);

}  // namespace oafem
