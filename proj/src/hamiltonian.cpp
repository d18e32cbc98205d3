#include "pk/hamiltonian.hpp"

#include <cmath>
#include <string>

namespace pk {

namespace {

[[noreturn]] void axis_error(const Point2& p) {
    throw AxisSingularity("axis singularity: |y| = " + std::to_string(std::fabs(p.y)) +
                          " is inside the excluded strip around y = 0");
}

void require_off_axis(const Point2& p) {
    if (std::fabs(p.y) <= axis_epsilon()) axis_error(p);
}

}  // namespace

Cotangent liouville_oneform(const Point2& p) {
    const double C = std::cosh(2.0 * p.y);
    return {p, {-p.y / C, -p.x * C}};
}

const OneForm& liouville_oneform_exprs() {
    static const OneForm lambda{parse_expr("-(y/cosh(2*y))"), parse_expr("-(x*cosh(2*y))")};
    return lambda;
}

double phi_coefficient(const Point2& p) {
    const double C = std::cosh(2.0 * p.y);
    return (C * C - 1.0) / C;
}

double phi_coefficient_dlambda(const Point2& p) {
    static const TwoForm2D dlambda = exterior_d_oneform(liouville_oneform_exprs());
    return -dlambda.at(p);
}

TangentVec zh_field(const HamiltonianSystem& sys, const Point2& p) {
    require_off_axis(p);
    const double C = std::cosh(2.0 * p.y);
    const double w = C / (C * C - 1.0);
    const Jet2 j = jet_eval(sys.H, p);
    return {p, {w * j.gy, -w * j.gx}};
}

double verify_izh(const HamiltonianSystem& sys, const Point2& p) {
    const double f = phi_coefficient(p);
    const Vec2 z = zh_field(sys, p).comp;
    const Vec2 lhs = interior_product_2form(f, z);
    const Jet2 j = jet_eval(sys.H, p);
    return std::max(std::fabs(lhs.x - j.gx), std::fabs(lhs.y - j.gy));
}

Vec2 hamilton_rhs(const HamiltonianSystem& sys, const Point2& p) {
    return zh_field(sys, p).comp;
}

Trajectory hamilton_flow(const HamiltonianSystem& sys, const Point2& p0,
                         const StepperConfig& cfg) {
    require_off_axis(p0);
    const double sign0 = p0.y > 0.0 ? 1.0 : -1.0;
    auto confinement = [sign0](const Point2& p) {
        if (sign0 * p.y < -axis_epsilon())
            throw AxisSingularity("axis singularity: trajectory crossed y = 0 (reached y = " +
                                  std::to_string(p.y) + ")");
        if (sign0 * p.y <= axis_epsilon()) axis_error(p);
    };
    // Checked per stage and again on every accepted state: the combined
    // RK4 update can land across the axis even when no stage point did.
    VectorField rhs = [&sys, confinement](const Point2& p) {
        confinement(p);
        return hamilton_rhs(sys, p);
    };
    StateGuard guard = [confinement](double, const Point2& p) { confinement(p); };
    std::vector<Monitor> monitors = {
        {"H", [&sys](double, const Point2& p) { return eval_expr(sys.H, p); }},
        {"phi_paper", [](double, const Point2& p) { return phi_coefficient(p); }},
        {"phi_exterior", [](double, const Point2& p) { return phi_coefficient_dlambda(p); }},
    };
    return integrate(rhs, p0, cfg, monitors, guard);
}

double weighted_divergence(const HamiltonianSystem& sys, const Point2& p) {
    require_off_axis(p);
    auto weighted = [&sys](const Point2& q) {
        const double f = phi_coefficient(q);
        const Vec2 z = zh_field(sys, q).comp;
        return Vec2{f * z.x, f * z.y};
    };
    const double hx = 1e-5 * std::max(1.0, std::fabs(p.x));
    const double hy = 1e-5 * std::max(1.0, std::fabs(p.y));
    const double dfx =
        (weighted({p.x + hx, p.y}).x - weighted({p.x - hx, p.y}).x) / (2.0 * hx);
    const double dfy =
        (weighted({p.x, p.y + hy}).y - weighted({p.x, p.y - hy}).y) / (2.0 * hy);
    return dfx + dfy;
}

}  // namespace pk
