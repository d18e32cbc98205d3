#pragma once

#include "pk/errors.hpp"
#include "pk/types.hpp"

namespace pk {

// The model surface (R^2, g, J):
//
//   g = (4/c) (cosh^2(2y) dx dx - dy dy),
//   J(d/dx) = -cosh(2y) d/dy,   J(d/dy) = -(1/cosh 2y) d/dx,
//
// a product structure (J^2 = Id) that is skew-symmetric with respect to
// the indefinite metric g and parallel under its Levi-Civita connection.
// The constant c != 0 is the J-sectional curvature of every tangent plane
// span{u, Ju}.
class SpaceForm {
  public:
    explicit SpaceForm(double c) : c_(c) {
        if (c == 0.0) throw Error("space form constant c must be nonzero");
    }

    double c() const { return c_; }

  private:
    double c_;
};

struct TangentVec {
    Point2 base;
    Vec2 comp;  // components on (d/dx, d/dy)
};

struct Cotangent {
    Point2 base;
    Vec2 comp;  // components on (dx, dy)
};

// Christoffel symbols G[k][i][j] = Gamma^k_{ij}, symmetric in (i, j).
// Index 0 is x, index 1 is y.
struct Christoffel {
    double G[2][2][2] = {};

    double operator()(int k, int i, int j) const { return G[k][i][j]; }
};

// Pointwise metric matrix of g.
Mat2 metric_at(const SpaceForm& sf, const Point2& p);

// g(u, v). Throws BasePointMismatch unless u and v share a base point.
double g_apply(const SpaceForm& sf, const TangentVec& u, const TangentVec& v);

// Matrix of J on tangent components; columns are the images of the frame.
Mat2 J_at(const Point2& p);

// J applied to a tangent vector at its own base point.
TangentVec J_apply(const TangentVec& u);

// Dual endomorphism on covectors: dx -> -cosh(2y) dy, dy -> -(1/cosh 2y) dx.
Cotangent Jstar_apply(const Point2& p, const Cotangent& a);

// Levi-Civita connection coefficients of g via the Koszul formula; the
// constant factor 4/c cancels. Nonzero entries are
//   Gamma^x_{xy} = Gamma^x_{yx} = 2 tanh 2y,  Gamma^y_{xx} = 2 sinh 2y cosh 2y.
Christoffel christoffel_at(const SpaceForm& sf, const Point2& p);

// Max-abs component of the covariant derivative of J at p. Zero (to
// roundoff) everywhere: the structure is parallel.
double nabla_J_norm(const SpaceForm& sf, const Point2& p);

// Curvature (0,4)-tensor R(X,Y,Z,V) = g(R(X,Y)Z, V), assembled from the
// analytically differentiated Christoffel symbols. Sign convention:
// R(X,Y)Z = nabla_[X,Y] Z - [nabla_X, nabla_Y] Z, under which the
// sectional curvature of span{u,v} is R(u,v,u,v) over the plane's Gram
// determinant and every J-plane has curvature +c.
double riemann_0_4(const SpaceForm& sf, const Point2& p, const TangentVec& X,
                   const TangentVec& Y, const TangentVec& Z, const TangentVec& V);

// The constant-curvature comparison tensor
//   R0(X,Y,Z,V) = 1/4 { g(X,Z)g(Y,V) - g(X,V)g(Y,Z) - g(X,JZ)g(Y,JV)
//                       + g(X,JV)g(Y,JZ) - 2 g(X,JY)g(Z,JV) }.
double r0_at(const SpaceForm& sf, const Point2& p, const TangentVec& X, const TangentVec& Y,
             const TangentVec& Z, const TangentVec& V);

// k(span{u,v}) = R(u,v,u,v) / (g(u,u)g(v,v) - g(u,v)^2). Throws
// DegeneratePlane when the denominator is within tolerance of zero.
double sectional_curvature(const SpaceForm& sf, const Point2& p, const TangentVec& u,
                           const TangentVec& v);

// Sectional curvature of the J-plane span{u, Ju}; equals c for every
// non-isotropic u. Throws IsotropicVector when g(u,u) ~ 0.
double j_sectional_curvature(const SpaceForm& sf, const Point2& p, const TangentVec& u);

// max over the 16 frame slots of |R - c R0| at p.
double space_form_residual(const SpaceForm& sf, const Point2& p);

}  // namespace pk
