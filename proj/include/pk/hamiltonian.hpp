#pragma once

#include "pk/expr.hpp"
#include "pk/forms.hpp"
#include "pk/geometry.hpp"
#include "pk/integrator.hpp"
#include "pk/types.hpp"

namespace pk {

// Hamiltonian H as a scalar field on the base chart. The para-symplectic
// form degenerates on the axis y = 0, so every operation here is
// restricted to |y| > axis_epsilon() and flows are confined to one open
// half-plane.
struct HamiltonianSystem {
    Expr H;
};

// Half-width of the excluded strip around y = 0. Below this the
// coefficient (cosh^2 2y - 1)/cosh 2y ~ 4y^2 makes the vector field
// numerically stiff and analytically undefined at y = 0.
constexpr double axis_epsilon() { return 1e-6; }

// lambda = Jstar(x dx + y dy): components (-y/cosh 2y, -x cosh 2y).
Cotangent liouville_oneform(const Point2& p);

// The same 1-form with closed-form Expr coefficients (the input for the
// exterior-derivative route below).
const OneForm& liouville_oneform_exprs();

// Normative coefficient of the para-symplectic form Phi on dx^dy:
//   (cosh^2 2y - 1)/cosh 2y.
// The Hamiltonian vector field and flow are built from this value.
double phi_coefficient(const Point2& p);

// Independent route: coefficient of -d(lambda) computed by exact exterior
// differentiation of the Expr coefficients,
//   cosh 2y - sech 2y + 2y sech 2y tanh 2y.
// Differs from phi_coefficient by the product-rule term
// 2y sech 2y tanh 2y; exposed as a cross-check, never used by dynamics.
double phi_coefficient_dlambda(const Point2& p);

// Z_H = (cosh 2y/(cosh^2 2y - 1)) (dH/dy, -dH/dx). Throws AxisSingularity
// inside the strip.
TangentVec zh_field(const HamiltonianSystem& sys, const Point2& p);

// Max-abs residual of i_{Z_H} Phi - dH at p; zero up to roundoff.
double verify_izh(const HamiltonianSystem& sys, const Point2& p);

// Right-hand side of the flow equations; the same code path as zh_field,
// so the two agree bitwise.
Vec2 hamilton_rhs(const HamiltonianSystem& sys, const Point2& p);

// Integrates the Z_H flow from p0, recording monitors H, phi_paper,
// phi_exterior. Aborts (with the failure time kept in the trajectory)
// as soon as the path reaches the axis strip or would cross y = 0.
Trajectory hamilton_flow(const HamiltonianSystem& sys, const Point2& p0,
                         const StepperConfig& cfg);

// Divergence of the density-weighted field f * Z_H with f the normative
// Phi coefficient, computed by central differences. Analytically the
// weighted field is (H_y, -H_x), so this is a numerical zero.
double weighted_divergence(const HamiltonianSystem& sys, const Point2& p);

}  // namespace pk
