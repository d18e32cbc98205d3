// Python bindings for the para-Kahler surface engine. Scalar fields are
// passed as expression strings, points and vectors as (x, y) tuples.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <utility>

#include "pk/expr.hpp"
#include "pk/geometry.hpp"
#include "pk/hamiltonian.hpp"
#include "pk/integrator.hpp"
#include "pk/lagrangian.hpp"

namespace py = pybind11;
using Pair = std::pair<double, double>;

namespace {

pk::Point2 pt(const Pair& p) { return {p.first, p.second}; }
Pair pair_of(const pk::Vec2& v) { return {v.x, v.y}; }

pk::TangentVec tv(const Pair& p, const Pair& comp) {
    return {pt(p), {comp.first, comp.second}};
}

py::dict traj_dict(const pk::Trajectory& traj) {
    py::list t, x, y;
    for (const auto& s : traj.samples) {
        t.append(s.t);
        x.append(s.p.x);
        y.append(s.p.y);
    }
    py::dict monitors;
    for (std::size_t i = 0; i < traj.monitor_names.size(); ++i) {
        py::list col;
        for (const auto& s : traj.samples) col.append(s.monitors[i]);
        monitors[py::str(traj.monitor_names[i])] = col;
    }
    py::dict d;
    d["t"] = t;
    d["x"] = x;
    d["y"] = y;
    d["monitors"] = monitors;
    d["completed"] = traj.completed();
    d["reason"] = traj.termination.reason;
    d["t_end"] = traj.termination.t;
    return d;
}

pk::StepperConfig cfg_of(double T, double h) {
    pk::StepperConfig cfg;
    cfg.t_final = T;
    cfg.h = h;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(parakahler, m) {
    m.doc() = "para-Kahler surface model: metric/curvature identities and "
              "Euler-Lagrange / para-Hamiltonian flows";

    py::register_exception<pk::Error>(m, "Error");

    py::class_<pk::Expr>(m, "Expr")
        .def("__str__", &pk::Expr::str)
        .def("__repr__", [](const pk::Expr& e) { return "Expr(\"" + e.str() + "\")"; });

    py::class_<pk::Jet2>(m, "Jet2")
        .def_readonly("value", &pk::Jet2::v)
        .def_property_readonly("grad",
                               [](const pk::Jet2& j) { return Pair{j.gx, j.gy}; })
        .def_property_readonly("hess",
                               [](const pk::Jet2& j) {
                                   return std::make_pair(Pair{j.hxx, j.hxy}, Pair{j.hxy, j.hyy});
                               })
        .def("__repr__", [](const pk::Jet2& j) {
            return "Jet2(value=" + std::to_string(j.v) + ")";
        });

    m.def("parse", [](const std::string& s) { return pk::parse_expr(s); },
          "parse an expression in x and y");
    m.def("evaluate",
          [](const std::string& s, const Pair& p) { return pk::eval_expr(pk::parse_expr(s), pt(p)); });
    m.def("jet", [](const std::string& s, const Pair& p) {
        return pk::jet_eval(pk::parse_expr(s), pt(p));
    });
    m.def("fd_jet", [](const std::string& s, const Pair& p, double h) {
        return pk::fd_jet(pk::parse_expr(s), pt(p), h);
    });

    // geometry
    m.def("metric_at", [](double c, const Pair& p) {
        const pk::Mat2 g = pk::metric_at(pk::SpaceForm(c), pt(p));
        return std::make_pair(Pair{g.m00, g.m01}, Pair{g.m10, g.m11});
    });
    m.def("g_apply", [](double c, const Pair& p, const Pair& u, const Pair& v) {
        return pk::g_apply(pk::SpaceForm(c), tv(p, u), tv(p, v));
    });
    m.def("j_matrix", [](const Pair& p) {
        const pk::Mat2 J = pk::J_at(pt(p));
        return std::make_pair(Pair{J.m00, J.m01}, Pair{J.m10, J.m11});
    });
    m.def("j_apply", [](const Pair& p, const Pair& u) {
        return pair_of(pk::J_apply(tv(p, u)).comp);
    });
    m.def("jstar_apply", [](const Pair& p, const Pair& a) {
        return pair_of(pk::Jstar_apply(pt(p), {pt(p), {a.first, a.second}}).comp);
    });
    m.def("christoffel", [](double c, const Pair& p) {
        const pk::Christoffel ch = pk::christoffel_at(pk::SpaceForm(c), pt(p));
        py::list out;
        for (int k = 0; k < 2; ++k) {
            py::list plane;
            for (int i = 0; i < 2; ++i)
                plane.append(Pair{ch(k, i, 0), ch(k, i, 1)});
            out.append(plane);
        }
        return out;
    });
    m.def("nabla_j_norm", [](double c, const Pair& p) {
        return pk::nabla_J_norm(pk::SpaceForm(c), pt(p));
    });
    m.def("riemann", [](double c, const Pair& p, const Pair& X, const Pair& Y, const Pair& Z,
                        const Pair& V) {
        const pk::SpaceForm sf(c);
        return pk::riemann_0_4(sf, pt(p), tv(p, X), tv(p, Y), tv(p, Z), tv(p, V));
    });
    m.def("r0", [](double c, const Pair& p, const Pair& X, const Pair& Y, const Pair& Z,
                   const Pair& V) {
        const pk::SpaceForm sf(c);
        return pk::r0_at(sf, pt(p), tv(p, X), tv(p, Y), tv(p, Z), tv(p, V));
    });
    m.def("sectional_curvature", [](double c, const Pair& p, const Pair& u, const Pair& v) {
        return pk::sectional_curvature(pk::SpaceForm(c), pt(p), tv(p, u), tv(p, v));
    });
    m.def("j_sectional_curvature", [](double c, const Pair& p, const Pair& u) {
        return pk::j_sectional_curvature(pk::SpaceForm(c), pt(p), tv(p, u));
    });
    m.def("space_form_residual", [](double c, const Pair& p) {
        return pk::space_form_residual(pk::SpaceForm(c), pt(p));
    });

    // Euler-Lagrange dynamics
    m.def("semispray", [](double c, const std::string& L, const Pair& p) {
        return pair_of(pk::semispray_solve({pk::parse_expr(L), pk::SpaceForm(c)}, pt(p)));
    });
    m.def("el_residual", [](double c, const std::string& L, const Pair& p, const Pair& vel) {
        return pair_of(pk::el_residual({pk::parse_expr(L), pk::SpaceForm(c)},
                                       {pt(p), {vel.first, vel.second}}));
    });
    m.def("energy", [](double c, const std::string& L, const Pair& p, const Pair& vel) {
        return pk::energy({pk::parse_expr(L), pk::SpaceForm(c)}, {pt(p), {vel.first, vel.second}});
    });
    m.def("energy_sign_variant",
          [](double c, const std::string& L, const Pair& p, const Pair& vel) {
              return pk::energy_sign_variant({pk::parse_expr(L), pk::SpaceForm(c)},
                                             {pt(p), {vel.first, vel.second}});
          });
    m.def("el_flow", [](double c, const std::string& L, const Pair& p0, double T, double h) {
        return traj_dict(pk::el_flow({pk::parse_expr(L), pk::SpaceForm(c)}, pt(p0), cfg_of(T, h)));
    });

    // para-Hamiltonian dynamics
    m.def("axis_epsilon", [] { return pk::axis_epsilon(); });
    m.def("liouville_oneform", [](const Pair& p) {
        return pair_of(pk::liouville_oneform(pt(p)).comp);
    });
    m.def("phi_coefficient", [](const Pair& p) { return pk::phi_coefficient(pt(p)); });
    m.def("phi_coefficient_dlambda",
          [](const Pair& p) { return pk::phi_coefficient_dlambda(pt(p)); });
    m.def("zh_field", [](const std::string& H, const Pair& p) {
        return pair_of(pk::zh_field({pk::parse_expr(H)}, pt(p)).comp);
    });
    m.def("verify_izh", [](const std::string& H, const Pair& p) {
        return pk::verify_izh({pk::parse_expr(H)}, pt(p));
    });
    m.def("weighted_divergence", [](const std::string& H, const Pair& p) {
        return pk::weighted_divergence({pk::parse_expr(H)}, pt(p));
    });
    m.def("hamilton_flow", [](const std::string& H, const Pair& p0, double T, double h) {
        return traj_dict(pk::hamilton_flow({pk::parse_expr(H)}, pt(p0), cfg_of(T, h)));
    });

#ifdef PK_VERSION
    m.attr("__version__") = PK_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
