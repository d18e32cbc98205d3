#pragma once

#include <utility>

#include "pk/expr.hpp"
#include "pk/geometry.hpp"
#include "pk/integrator.hpp"
#include "pk/types.hpp"

namespace pk {

// Lagrangian L as a scalar field on the base chart, plus the ambient
// space-form constant. The dynamics below depend on L and the cosh(2y)
// weights only; c is carried for metric-level queries.
struct LagrangianSystem {
    Expr L;
    SpaceForm sf;
};

// Chart point plus semispray components (X, Y) = (xdot, ydot).
struct ELState {
    Point2 p;
    Vec2 vel;
};

// V = J(xi): the image of the semispray under the product structure,
//   V = -(Y / cosh 2y) d/dx - (X cosh 2y) d/dy.
TangentVec liouville_field(const ELState& s);

// Vertical differential of L: dL composed with J,
//   d_J L = (-cosh 2y * dL/dy) dx + (-(1/cosh 2y) * dL/dx) dy.
Cotangent dJ_of(const LagrangianSystem& sys, const Point2& p);

// Coefficient matrix of the induced closed 2-form, assembled from the
// exact Hessian of L:
//   M = [ cosh 2y * L_xy   cosh 2y * L_yy ]
//       [ L_xx / cosh 2y   L_xy / cosh 2y ].
// Row r of M dotted with (X, Y), plus the matching gradient entry, is the
// Euler-Lagrange residual component r; el_residual uses exactly this
// code path, so the two routes agree bitwise.
Mat2 phiL_coefficients(const LagrangianSystem& sys, const Point2& p);

// E_L = V(L) - L, with V the Liouville field (both terms carry the minus
// sign of V's components).
double energy(const LagrangianSystem& sys, const ELState& s);

// Sign variant with the second term flipped:
//   -(Y/cosh 2y) L_x + (X cosh 2y) L_y - L.
// Kept alongside energy() so the difference 2 cosh(2y) X L_y between the
// two conventions stays visible in tests instead of silently vanishing.
double energy_sign_variant(const LagrangianSystem& sys, const ELState& s);

// Euler-Lagrange residual of a state:
//   r1 = cosh 2y (L_xy X + L_yy Y) + L_x
//   r2 = (1/cosh 2y)(L_xx X + L_xy Y) + L_y
// (time derivatives expanded along the curve by the chain rule).
Vec2 el_residual(const LagrangianSystem& sys, const ELState& s);

// The unique velocity with vanishing residual at p, from the 2x2 linear
// solve M [X Y]^T = -grad L. Throws DegenerateLagrangian when the Hessian
// determinant of L is within tolerance of zero.
Vec2 semispray_solve(const LagrangianSystem& sys, const Point2& p);

// Integrates pdot = semispray_solve(p) from p0. Records monitors
// xdot, ydot, E_L, res1, res2 at every sample. A degenerate Hessian along
// the way aborts the trajectory with the failure time.
Trajectory el_flow(const LagrangianSystem& sys, const Point2& p0, const StepperConfig& cfg);

}  // namespace pk
