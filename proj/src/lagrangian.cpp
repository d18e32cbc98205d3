#include "pk/lagrangian.hpp"

#include <cmath>

namespace pk {

TangentVec liouville_field(const ELState& s) {
    const double C = std::cosh(2.0 * s.p.y);
    return {s.p, {-s.vel.y / C, -s.vel.x * C}};
}

Cotangent dJ_of(const LagrangianSystem& sys, const Point2& p) {
    const double C = std::cosh(2.0 * p.y);
    const Jet2 j = jet_eval(sys.L, p);
    return {p, {-C * j.gy, -j.gx / C}};
}

Mat2 phiL_coefficients(const LagrangianSystem& sys, const Point2& p) {
    const double C = std::cosh(2.0 * p.y);
    const Jet2 j = jet_eval(sys.L, p);
    return {C * j.hxy, C * j.hyy, j.hxx / C, j.hxy / C};
}

namespace {

// Shared so energy() and energy_sign_variant() differ in exactly one sign.
struct EnergyTerms {
    double t1;  // -(Y/cosh 2y) L_x
    double t2;  // (X cosh 2y) L_y
    double L;
};

EnergyTerms energy_terms(const LagrangianSystem& sys, const ELState& s) {
    const double C = std::cosh(2.0 * s.p.y);
    const Jet2 j = jet_eval(sys.L, s.p);
    return {-(s.vel.y / C) * j.gx, (s.vel.x * C) * j.gy, j.v};
}

}  // namespace

double energy(const LagrangianSystem& sys, const ELState& s) {
    const EnergyTerms e = energy_terms(sys, s);
    return e.t1 - e.t2 - e.L;
}

double energy_sign_variant(const LagrangianSystem& sys, const ELState& s) {
    const EnergyTerms e = energy_terms(sys, s);
    return e.t1 + e.t2 - e.L;
}

Vec2 el_residual(const LagrangianSystem& sys, const ELState& s) {
    const Mat2 M = phiL_coefficients(sys, s.p);
    const Jet2 j = jet_eval(sys.L, s.p);
    return {M.m00 * s.vel.x + M.m01 * s.vel.y + j.gx,
            M.m10 * s.vel.x + M.m11 * s.vel.y + j.gy};
}

Vec2 semispray_solve(const LagrangianSystem& sys, const Point2& p) {
    const Mat2 M = phiL_coefficients(sys, p);
    const Jet2 j = jet_eval(sys.L, p);
    // det M = L_xy^2 - L_xx L_yy: regularity of L is regularity of M.
    const double det = M.m00 * M.m11 - M.m01 * M.m10;
    const double scale = std::max({1.0, std::fabs(j.hxx), std::fabs(j.hyy), std::fabs(j.hxy)});
    if (std::fabs(det) <= 1e-12 * scale * scale)
        throw DegenerateLagrangian("semispray_solve: Hessian of L is singular at (" +
                                   std::to_string(p.x) + ", " + std::to_string(p.y) + ")");
    const double b0 = -j.gx, b1 = -j.gy;
    return {(b0 * M.m11 - b1 * M.m01) / det, (M.m00 * b1 - M.m10 * b0) / det};
}

Trajectory el_flow(const LagrangianSystem& sys, const Point2& p0, const StepperConfig& cfg) {
    VectorField rhs = [&sys](const Point2& p) { return semispray_solve(sys, p); };
    std::vector<Monitor> monitors = {
        {"xdot", [&sys](double, const Point2& p) { return semispray_solve(sys, p).x; }},
        {"ydot", [&sys](double, const Point2& p) { return semispray_solve(sys, p).y; }},
        {"E_L",
         [&sys](double, const Point2& p) {
             return energy(sys, {p, semispray_solve(sys, p)});
         }},
        {"res1",
         [&sys](double, const Point2& p) {
             return el_residual(sys, {p, semispray_solve(sys, p)}).x;
         }},
        {"res2",
         [&sys](double, const Point2& p) {
             return el_residual(sys, {p, semispray_solve(sys, p)}).y;
         }},
    };
    return integrate(rhs, p0, cfg, monitors);
}

}  // namespace pk
