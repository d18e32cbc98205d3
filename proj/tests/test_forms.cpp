#include <doctest.h>

#include <cmath>

#include "pk/forms.hpp"
#include "test_util.hpp"

using pk::OneForm;
using pk::parse_expr;
using pk::Point2;
using pk::TwoForm2D;
using pk::Vec2;

TEST_CASE("exterior_d: exact form and area generator") {
    const TwoForm2D zero = pk::exterior_d_oneform({parse_expr("x"), parse_expr("y")});
    const TwoForm2D area = pk::exterior_d_oneform({parse_expr("-y"), parse_expr("0")});
    pk::SampleRng rng(11);
    for (int i = 0; i < 20; ++i) {
        const Point2 p{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        CHECK(zero.at(p) == 0.0);
        CHECK(area.at(p) == 1.0);
    }
}

TEST_CASE("exterior_d of the Liouville-type 1-form matches the hand derivative") {
    // lambda = -(y/cosh 2y) dx - (x cosh 2y) dy
    const OneForm lambda{parse_expr("-(y/cosh(2*y))"), parse_expr("-(x*cosh(2*y))")};
    const TwoForm2D dl = pk::exterior_d_oneform(lambda);
    pk::SampleRng rng(12);
    for (int i = 0; i < 30; ++i) {
        const Point2 p{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        const double C = std::cosh(2.0 * p.y);
        const double s = 1.0 / C;
        const double t = std::tanh(2.0 * p.y);
        const double expected = s - 2.0 * p.y * s * t - C;
        CHECK(dl.at(p) == doctest::Approx(expected).epsilon(1e-13));
    }
    CHECK(dl.at({0.0, 0.25}) ==
          doctest::Approx(1.0 / std::cosh(0.5) -
                          0.5 / std::cosh(0.5) * std::tanh(0.5) - std::cosh(0.5))
              .epsilon(1e-14));
}

TEST_CASE("interior product basis contractions") {
    CHECK(pk::interior_product_2form(1.0, {1.0, 0.0}) == Vec2{0.0, 1.0});
    CHECK(pk::interior_product_2form(1.0, {0.0, 1.0}) == Vec2{-1.0, 0.0});
    const Vec2 z = pk::interior_product_2form(TwoForm2D::zero().at({0.5, -1.0}), {3.0, -4.0});
    CHECK(z.x == 0.0);
    CHECK(z.y == 0.0);
    // linearity in the vector slot
    const Vec2 a = pk::interior_product_2form(2.5, {1.0, 2.0});
    const Vec2 b = pk::interior_product_2form(2.5, {3.0, -1.0});
    const Vec2 ab = pk::interior_product_2form(2.5, {4.0, 1.0});
    CHECK(a.x + b.x == doctest::Approx(ab.x).epsilon(1e-15));
    CHECK(a.y + b.y == doctest::Approx(ab.y).epsilon(1e-15));
}

TEST_CASE("d o d = 0 on exact one-forms") {
    // Hand-derived gradient pairs (f; f_x, f_y).
    struct Triple {
        const char* fx;
        const char* fy;
    };
    const Triple table[] = {
        {"2*x*y + cos(x)", "x^2"},                      // f = x^2 y + sin(x)
        {"cosh(y)*cos(x)", "sinh(y)*sin(x)"},           // f = sin(x) cosh(y)
        {"2*x*exp(y^2)", "2*y*x^2*exp(y^2)"},           // f = x^2 exp(y^2)
        {"tanh(y)", "x*(1-tanh(y)^2)"},                 // f = x tanh(y)
        {"y*cosh(2*x)*2", "sinh(2*x)"},                 // f = y sinh(2x)
    };
    pk::SampleRng rng(13);
    for (const auto& tr : table) {
        const TwoForm2D dd = pk::exterior_d_oneform({parse_expr(tr.fx), parse_expr(tr.fy)});
        for (int i = 0; i < 20; ++i) {
            const Point2 p{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
            CHECK(std::fabs(dd.at(p)) <= 1e-9);
        }
    }
}

TEST_CASE("d o d = 0 on random exact one-forms (symbolic gradients)") {
    pk::SampleRng rng(14);
    int kept = 0;
    while (kept < 40) {
        const pk::Expr f = pktest::random_tree(rng, 5, pktest::TreeStyle::Smooth);
        const OneForm df{pktest::derivative(f, pk::Var::X), pktest::derivative(f, pk::Var::Y)};
        const TwoForm2D dd = pk::exterior_d_oneform(df);
        bool used = false;
        for (int i = 0; i < 10; ++i) {
            const Point2 p{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
            double v;
            try {
                v = dd.at(p);
            } catch (const pk::EvalDomainError&) {
                continue;
            }
            if (!std::isfinite(v) || std::fabs(pk::eval_expr(f, p)) > 1e3) continue;
            CHECK(std::fabs(v) <= 1e-9);
            used = true;
        }
        if (used) ++kept;
    }
}
