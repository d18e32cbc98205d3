#include <doctest.h>

#include <cmath>

#include "pk/lagrangian.hpp"
#include "pk/sampling.hpp"

using pk::ELState;
using pk::LagrangianSystem;
using pk::Point2;
using pk::SpaceForm;
using pk::StepperConfig;
using pk::TangentVec;
using pk::Trajectory;
using pk::Vec2;

namespace {

LagrangianSystem quad() { return {pk::parse_expr("x^2+y^2"), SpaceForm(4.0)}; }

StepperConfig cfg(double h, double T) {
    StepperConfig c;
    c.h = h;
    c.t_final = T;
    return c;
}

}  // namespace

TEST_CASE("Liouville field") {
    const TangentVec a = pk::liouville_field({{0.0, 0.0}, {1.0, 0.0}});
    CHECK(a.comp.x == 0.0);
    CHECK(a.comp.y == -1.0);
    const TangentVec b = pk::liouville_field({{0.0, 0.0}, {0.0, 1.0}});
    CHECK(b.comp.x == -1.0);
    CHECK(b.comp.y == 0.0);

    // J(V) recovers the semispray because J is an involution.
    pk::SampleRng rng(31);
    for (int i = 0; i < 30; ++i) {
        const ELState s{{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)},
                        {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)}};
        const TangentVec back = pk::J_apply(pk::liouville_field(s));
        CHECK(std::fabs(back.comp.x - s.vel.x) <= 1e-14 * std::max(1.0, std::fabs(s.vel.x)));
        CHECK(std::fabs(back.comp.y - s.vel.y) <= 1e-14 * std::max(1.0, std::fabs(s.vel.y)));
    }
}

TEST_CASE("vertical differential of L") {
    const SpaceForm sf(4.0);
    const pk::Cotangent a = pk::dJ_of({pk::parse_expr("x"), sf}, {0.0, 0.0});
    CHECK(a.comp.x == 0.0);
    CHECK(a.comp.y == -1.0);
    const pk::Cotangent b = pk::dJ_of({pk::parse_expr("y"), sf}, {0.0, 0.0});
    CHECK(b.comp.x == -1.0);
    CHECK(b.comp.y == -0.0);
    const pk::Cotangent c = pk::dJ_of(quad(), {1.0, 0.5});
    CHECK(c.comp.x == doctest::Approx(-std::cosh(1.0) * 1.0).epsilon(1e-15));
    CHECK(c.comp.y == doctest::Approx(-2.0 / std::cosh(1.0)).epsilon(1e-15));
    CHECK(c.comp.x == doctest::Approx(-1.5430806348).epsilon(1e-9));
    CHECK(c.comp.y == doctest::Approx(-1.2961085473).epsilon(1e-9));
}

TEST_CASE("closed-form coefficient matrix") {
    const pk::Mat2 m = pk::phiL_coefficients(quad(), {0.0, 0.0});
    CHECK(m == pk::Mat2{0.0, 2.0, 2.0, 0.0});
    const pk::Mat2 z =
        pk::phiL_coefficients({pk::parse_expr("3.5"), SpaceForm(4.0)}, {0.4, -0.7});
    CHECK(z == pk::Mat2{0.0, 0.0, 0.0, 0.0});
    const pk::Mat2 xy = pk::phiL_coefficients({pk::parse_expr("x*y"), SpaceForm(4.0)}, {0.0, 0.0});
    CHECK(xy == pk::Mat2{1.0, 0.0, 0.0, 1.0});
}

TEST_CASE("energy and its sign variant") {
    const LagrangianSystem sys = quad();
    CHECK(pk::energy(sys, {{1.0, 0.0}, {0.0, -1.0}}) == 1.0);
    const LagrangianSystem konst{pk::parse_expr("2.5"), SpaceForm(4.0)};
    CHECK(pk::energy(konst, {{0.3, -0.8}, {1.0, 2.0}}) == -2.5);
    CHECK(pk::energy(sys, {{1.0, 0.5}, {0.0, 0.0}}) ==
          doctest::Approx(-pk::eval_expr(sys.L, {1.0, 0.5})).epsilon(1e-15));

    // The two conventions differ by exactly 2 cosh(2y) X dL/dy.
    pk::SampleRng rng(32);
    for (int i = 0; i < 50; ++i) {
        const ELState s{{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)},
                        {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)}};
        const double gap = pk::energy_sign_variant(sys, s) - pk::energy(sys, s);
        const double expected =
            2.0 * std::cosh(2.0 * s.p.y) * s.vel.x * pk::jet_eval(sys.L, s.p).gy;
        CHECK(gap == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("Euler-Lagrange residual") {
    const LagrangianSystem konst{pk::parse_expr("7"), SpaceForm(4.0)};
    const Vec2 rz = pk::el_residual(konst, {{1.0, 2.0}, {3.0, 4.0}});
    CHECK(rz.x == 0.0);
    CHECK(rz.y == 0.0);

    const LagrangianSystem sys = quad();
    const Vec2 solved = pk::el_residual(sys, {{1.0, 0.0}, {0.0, -1.0}});
    CHECK(solved.x == 0.0);
    CHECK(solved.y == 0.0);
    const Vec2 rest = pk::el_residual(sys, {{1.0, 0.0}, {0.0, 0.0}});
    CHECK(rest.x == 2.0);
    CHECK(rest.y == 0.0);
}

TEST_CASE("el_residual agrees bitwise with the coefficient-matrix route") {
    const LagrangianSystem sys{pk::parse_expr("sinh(x)*y + x^2"), SpaceForm(-2.0)};
    pk::SampleRng rng(33);
    for (int i = 0; i < 40; ++i) {
        const Point2 p{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        const Vec2 vel{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        const pk::Mat2 M = pk::phiL_coefficients(sys, p);
        const pk::Jet2 j = pk::jet_eval(sys.L, p);
        const Vec2 r = pk::el_residual(sys, {p, vel});
        CHECK(r.x == M.m00 * vel.x + M.m01 * vel.y + j.gx);
        CHECK(r.y == M.m10 * vel.x + M.m11 * vel.y + j.gy);
    }
}

TEST_CASE("el_residual is affine in the velocity") {
    const LagrangianSystem sys{pk::parse_expr("cosh(2*y)+x^2*y"), SpaceForm(4.0)};
    pk::SampleRng rng(34);
    for (int i = 0; i < 50; ++i) {
        const Point2 p{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        const Vec2 v1{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        const Vec2 v2{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        const Vec2 rs = pk::el_residual(sys, {p, v1 + v2});
        const Vec2 r1 = pk::el_residual(sys, {p, v1});
        const Vec2 r2 = pk::el_residual(sys, {p, v2});
        const Vec2 r0 = pk::el_residual(sys, {p, {0.0, 0.0}});
        const double scale =
            std::max({1.0, std::fabs(r1.x), std::fabs(r1.y), std::fabs(r2.x), std::fabs(r2.y)});
        CHECK(std::fabs(rs.x - r1.x - r2.x + r0.x) <= 1e-12 * scale);
        CHECK(std::fabs(rs.y - r1.y - r2.y + r0.y) <= 1e-12 * scale);
    }
}

TEST_CASE("semispray solve") {
    const LagrangianSystem sys = quad();
    const Vec2 a = pk::semispray_solve(sys, {1.0, 0.0});
    CHECK(a.x == 0.0);
    CHECK(a.y == -1.0);
    const Vec2 b = pk::semispray_solve(sys, {0.0, 1.0});
    CHECK(b.x == doctest::Approx(-std::cosh(2.0)).epsilon(1e-14));
    CHECK(b.x == doctest::Approx(-3.7621956911).epsilon(1e-9));
    CHECK(b.y == doctest::Approx(0.0).epsilon(1e-15));
    CHECK_THROWS_AS(pk::semispray_solve({pk::parse_expr("x"), SpaceForm(4.0)}, {0.0, 0.0}),
                    pk::DegenerateLagrangian);

    // closed form (xdot, ydot) = (-y cosh 2y, -x / cosh 2y) for L = x^2+y^2
    pk::SampleRng rng(35);
    for (int i = 0; i < 100; ++i) {
        const Point2 p{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        const Vec2 v = pk::semispray_solve(sys, p);
        const double C = std::cosh(2.0 * p.y);
        CHECK(std::fabs(v.x + p.y * C) <= 1e-12 * std::max(1.0, std::fabs(p.y * C)));
        CHECK(std::fabs(v.y + p.x / C) <= 1e-12);
        const Vec2 r = pk::el_residual(sys, {p, v});
        CHECK(std::fabs(r.x) <= 1e-10);
        CHECK(std::fabs(r.y) <= 1e-10);
    }

    // det Hess = -cosh^2(x) never vanishes here, so the solved residual
    // must be tiny everywhere
    const LagrangianSystem mixed{pk::parse_expr("sinh(x)*y + x^2"), SpaceForm(4.0)};
    for (int i = 0; i < 100; ++i) {
        const Point2 p{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        const Vec2 r = pk::el_residual(mixed, {p, pk::semispray_solve(mixed, p)});
        CHECK(std::fabs(r.x) <= 1e-10);
        CHECK(std::fabs(r.y) <= 1e-10);
    }
}

TEST_CASE("el_flow matches a fine-step integration") {
    const LagrangianSystem sys = quad();
    const Trajectory coarse = pk::el_flow(sys, {1.0, 0.0}, cfg(1e-3, 1.0));
    const Trajectory fine = pk::el_flow(sys, {1.0, 0.0}, cfg(1e-5, 1.0));
    REQUIRE(coarse.completed());
    REQUIRE(fine.completed());
    // compare at every coarse sample time (they align: 1e-3 = 100 * 1e-5)
    double worst = 0.0;
    for (std::size_t i = 0; i < coarse.samples.size(); ++i) {
        const auto& cs = coarse.samples[i];
        const auto& fs = fine.samples[i * 100];
        REQUIRE(std::fabs(cs.t - fs.t) <= 1e-12);
        worst = std::max({worst, std::fabs(cs.p.x - fs.p.x), std::fabs(cs.p.y - fs.p.y)});
    }
    CHECK(worst <= 1e-8);

    // velocity monitors satisfy the flow equations
    const auto& last = coarse.back();
    const double C = std::cosh(2.0 * last.p.y);
    CHECK(last.monitors[0] == doctest::Approx(-last.p.y * C).epsilon(1e-10));
    CHECK(last.monitors[1] == doctest::Approx(-last.p.x / C).epsilon(1e-10));
    // residual monitors stay tiny along the path
    for (const auto& s : coarse.samples) {
        CHECK(std::fabs(s.monitors[3]) <= 1e-9);
        CHECK(std::fabs(s.monitors[4]) <= 1e-9);
    }
}

TEST_CASE("a regular critical point is stationary") {
    const LagrangianSystem sys{pk::parse_expr("(x-1)^2 + y^2"), SpaceForm(4.0)};
    const Vec2 v = pk::semispray_solve(sys, {1.0, 0.0});
    CHECK(v.x == 0.0);
    CHECK(v.y == 0.0);
    const Trajectory t = pk::el_flow(sys, {1.0, 0.0}, cfg(1e-3, 0.5));
    REQUIRE(t.completed());
    for (const auto& s : t.samples) {
        CHECK(s.p.x == 1.0);
        CHECK(s.p.y == 0.0);
    }
}

TEST_CASE("flow retraces under field negation") {
    const LagrangianSystem sys = quad();
    const Trajectory fwd = pk::el_flow(sys, {1.0, 0.0}, cfg(1e-3, 1.0));
    REQUIRE(fwd.completed());
    const Point2 end = fwd.back().p;
    pk::VectorField neg = [&sys](const Point2& p) {
        const Vec2 v = pk::semispray_solve(sys, p);
        return Vec2{-v.x, -v.y};
    };
    const Trajectory back = pk::integrate(neg, end, cfg(1e-3, 1.0));
    REQUIRE(back.completed());
    CHECK(std::fabs(back.back().p.x - 1.0) <= 1e-9);
    CHECK(std::fabs(back.back().p.y) <= 1e-9);
}

TEST_CASE("frame identity along the flow, differenced at second order") {
    // cosh2y d/dt(L_y) + L_x and (1/cosh2y) d/dt(L_x) + L_y vanish along
    // solutions; estimating d/dt by central differences of the recorded
    // jets leaves an O(h^2) residual.
    const LagrangianSystem sys = quad();
    auto residual_at_h = [&](double h) {
        const Trajectory t = pk::el_flow(sys, {1.0, 0.0}, cfg(h, 0.5));
        REQUIRE(t.completed());
        double worst = 0.0;
        for (std::size_t i = 1; i + 1 < t.samples.size(); ++i) {
            const auto& prev = t.samples[i - 1];
            const auto& cur = t.samples[i];
            const auto& next = t.samples[i + 1];
            const pk::Jet2 jp = pk::jet_eval(sys.L, prev.p);
            const pk::Jet2 jc = pk::jet_eval(sys.L, cur.p);
            const pk::Jet2 jn = pk::jet_eval(sys.L, next.p);
            const double dt = next.t - prev.t;
            const double dLy = (jn.gy - jp.gy) / dt;
            const double dLx = (jn.gx - jp.gx) / dt;
            const double C = std::cosh(2.0 * cur.p.y);
            worst = std::max(worst, std::fabs(C * dLy + jc.gx));
            worst = std::max(worst, std::fabs(dLx / C + jc.gy));
        }
        return worst;
    };
    const double r1 = residual_at_h(1e-2);
    const double r2 = residual_at_h(5e-3);
    CHECK(r1 <= 50.0 * 1e-4);
    const double order = std::log2(r1 / r2);
    CHECK(order >= 1.8);  // second-order differencing
    CHECK(order <= 2.2);
}

TEST_CASE("degenerate starts and crossings abort with context") {
    const Trajectory dead = pk::el_flow({pk::parse_expr("x"), SpaceForm(4.0)}, {0.0, 0.0},
                                        cfg(1e-3, 1.0));
    CHECK(!dead.completed());
    CHECK(dead.termination.reason.find("singular") != std::string::npos);
    CHECK(dead.termination.t == 0.0);

    // det Hess L = -12y: starting just above the degenerate axis, the
    // solve blows up within the first step and the flow stops with its
    // prefix intact instead of streaming garbage.
    const Trajectory blowup = pk::el_flow({pk::parse_expr("x^2 + y^3"), SpaceForm(4.0)},
                                          {1.0, 1e-9}, cfg(1e-3, 1.0));
    CHECK(!blowup.completed());
    CHECK(!blowup.termination.reason.empty());
    CHECK(blowup.samples.size() >= 1);

    // and a start inside the threshold band reports the singular Hessian
    const Trajectory inband = pk::el_flow({pk::parse_expr("x^2 + y^3"), SpaceForm(4.0)},
                                          {1.0, 1e-15}, cfg(1e-3, 1.0));
    CHECK(!inband.completed());
    CHECK(inband.termination.reason.find("singular") != std::string::npos);
}
