#pragma once

#include <cmath>

#include "pk/types.hpp"

namespace pk {

// Second-order jet of a scalar field at a point: value, gradient and
// Hessian, carried through arithmetic by truncated Taylor rules. The
// off-diagonal Hessian entry is stored once, so symmetry holds by
// construction.
struct Jet2 {
    double v = 0.0;
    double gx = 0.0, gy = 0.0;
    double hxx = 0.0, hxy = 0.0, hyy = 0.0;

    static Jet2 constant(double c) { return {c, 0.0, 0.0, 0.0, 0.0, 0.0}; }
    static Jet2 seed_x(double x) { return {x, 1.0, 0.0, 0.0, 0.0, 0.0}; }
    static Jet2 seed_y(double y) { return {y, 0.0, 1.0, 0.0, 0.0, 0.0}; }

    Vec2 grad() const { return {gx, gy}; }
    Mat2 hess() const { return {hxx, hxy, hxy, hyy}; }

    // True when the jet carries no first- or second-order content, i.e.
    // it behaves as a constant under differentiation.
    bool is_flat() const {
        return gx == 0.0 && gy == 0.0 && hxx == 0.0 && hxy == 0.0 && hyy == 0.0;
    }
};

inline Jet2 operator-(const Jet2& a) {
    return {-a.v, -a.gx, -a.gy, -a.hxx, -a.hxy, -a.hyy};
}

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
    return {a.v + b.v, a.gx + b.gx, a.gy + b.gy, a.hxx + b.hxx, a.hxy + b.hxy, a.hyy + b.hyy};
}

inline Jet2 operator-(const Jet2& a, const Jet2& b) {
    return {a.v - b.v, a.gx - b.gx, a.gy - b.gy, a.hxx - b.hxx, a.hxy - b.hxy, a.hyy - b.hyy};
}

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
    return {a.v * b.v,
            a.gx * b.v + a.v * b.gx,
            a.gy * b.v + a.v * b.gy,
            a.hxx * b.v + 2.0 * a.gx * b.gx + a.v * b.hxx,
            a.hxy * b.v + a.gx * b.gy + a.gy * b.gx + a.v * b.hxy,
            a.hyy * b.v + 2.0 * a.gy * b.gy + a.v * b.hyy};
}

// Quotient rule, solved from a = q*b. Caller checks b.v != 0.
inline Jet2 operator/(const Jet2& a, const Jet2& b) {
    Jet2 q;
    q.v = a.v / b.v;
    q.gx = (a.gx - q.v * b.gx) / b.v;
    q.gy = (a.gy - q.v * b.gy) / b.v;
    q.hxx = (a.hxx - q.v * b.hxx - 2.0 * q.gx * b.gx) / b.v;
    q.hxy = (a.hxy - q.v * b.hxy - q.gx * b.gy - q.gy * b.gx) / b.v;
    q.hyy = (a.hyy - q.v * b.hyy - 2.0 * q.gy * b.gy) / b.v;
    return q;
}

// Chain rule for f(u) given f, f' and f'' at u.v.
inline Jet2 jet_compose(const Jet2& u, double f0, double f1, double f2) {
    return {f0,
            f1 * u.gx,
            f1 * u.gy,
            f1 * u.hxx + f2 * u.gx * u.gx,
            f1 * u.hxy + f2 * u.gx * u.gy,
            f1 * u.hyy + f2 * u.gy * u.gy};
}

inline Jet2 jet_sin(const Jet2& u) {
    double s = std::sin(u.v), c = std::cos(u.v);
    return jet_compose(u, s, c, -s);
}

inline Jet2 jet_cos(const Jet2& u) {
    double s = std::sin(u.v), c = std::cos(u.v);
    return jet_compose(u, c, -s, -c);
}

inline Jet2 jet_sinh(const Jet2& u) {
    double s = std::sinh(u.v), c = std::cosh(u.v);
    return jet_compose(u, s, c, s);
}

inline Jet2 jet_cosh(const Jet2& u) {
    double s = std::sinh(u.v), c = std::cosh(u.v);
    return jet_compose(u, c, s, c);
}

inline Jet2 jet_tanh(const Jet2& u) {
    double t = std::tanh(u.v);
    double d = 1.0 - t * t;  // sech^2
    return jet_compose(u, t, d, -2.0 * t * d);
}

inline Jet2 jet_exp(const Jet2& u) {
    double e = std::exp(u.v);
    return jet_compose(u, e, e, e);
}

// Caller checks u.v > 0.
inline Jet2 jet_ln(const Jet2& u) {
    double inv = 1.0 / u.v;
    return jet_compose(u, std::log(u.v), inv, -inv * inv);
}

// Caller checks u.v > 0 (the derivative blows up at 0).
inline Jet2 jet_sqrt(const Jet2& u) {
    double r = std::sqrt(u.v);
    double d1 = 0.5 / r;
    return jet_compose(u, r, d1, -0.5 * d1 / u.v);
}

}  // namespace pk
