#pragma once

#include <functional>
#include <utility>

#include "pk/expr.hpp"
#include "pk/types.hpp"

namespace pk {

// 1-form p dx + q dy with closed-form coefficients.
struct OneForm {
    Expr p;
    Expr q;

    // Coefficient values (p, q) at a point.
    Vec2 at(const Point2& pt) const { return {eval_expr(p, pt), eval_expr(q, pt)}; }
};

// 2-form f dx^dy. On a 2-D chart every 2-form is closed, so no exterior
// derivative is offered; only the coefficient is queried.
struct TwoForm2D {
    std::function<double(const Point2&)> coeff;

    double at(const Point2& pt) const { return coeff(pt); }

    static TwoForm2D zero() {
        return {[](const Point2&) { return 0.0; }};
    }
};

// d(p dx + q dy) = (dq/dx - dp/dy) dx^dy, with partials from exact jets.
inline TwoForm2D exterior_d_oneform(const OneForm& w) {
    return {[w](const Point2& pt) { return jet_eval(w.q, pt).gx - jet_eval(w.p, pt).gy; }};
}

// Interior product (contraction in the first slot) of v with f dx^dy:
//   i_v (f dx^dy) = f v1 dy - f v2 dx.
// Returns covector components on (dx, dy).
inline Vec2 interior_product_2form(double f, const Vec2& v) {
    return {-f * v.y, f * v.x};
}

}  // namespace pk
