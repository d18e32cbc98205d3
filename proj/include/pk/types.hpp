#pragma once

#include <cmath>

namespace pk {

// Chart point on the global (x, y) coordinate system.
struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

// Component pair. Used both for tangent components on (d/dx, d/dy) and
// covector components on (dx, dy); the carrying type says which.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline Point2 operator+(Point2 p, Vec2 v) { return {p.x + v.x, p.y + v.y}; }

// 2x2 real matrix, row-major.
struct Mat2 {
    double m00 = 0.0, m01 = 0.0;
    double m10 = 0.0, m11 = 0.0;

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    friend bool operator==(const Mat2&, const Mat2&) = default;
};

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

inline Vec2 operator*(const Mat2& a, Vec2 v) {
    return {a.m00 * v.x + a.m01 * v.y, a.m10 * v.x + a.m11 * v.y};
}

inline double max_abs_diff(const Mat2& a, const Mat2& b) {
    double d = std::fabs(a.m00 - b.m00);
    d = std::max(d, std::fabs(a.m01 - b.m01));
    d = std::max(d, std::fabs(a.m10 - b.m10));
    d = std::max(d, std::fabs(a.m11 - b.m11));
    return d;
}

}  // namespace pk
