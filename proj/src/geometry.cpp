#include "pk/geometry.hpp"

#include <cmath>

namespace pk {

namespace {

void require_same_base(const Point2& p, const TangentVec& u, const char* where) {
    if (!(u.base == p)) throw BasePointMismatch(std::string(where) + ": vector based elsewhere");
}

// Metric data at a point: entries, inverse, and first/second y-derivatives
// of the entries (the metric does not depend on x). Everything downstream
// (Koszul, curvature) is assembled generically from this record.
struct MetricJet {
    double g[2][2] = {};
    double ginv[2][2] = {};
    double dg[2][2] = {};    // d/dy of entries
    double d2g[2][2] = {};   // d^2/dy^2 of entries
};

MetricJet metric_jet(const SpaceForm& sf, const Point2& p) {
    const double k = 4.0 / sf.c();
    const double C = std::cosh(2.0 * p.y);
    const double S = std::sinh(2.0 * p.y);
    MetricJet m;
    m.g[0][0] = k * C * C;
    m.g[1][1] = -k;
    m.ginv[0][0] = 1.0 / m.g[0][0];
    m.ginv[1][1] = 1.0 / m.g[1][1];
    m.dg[0][0] = 4.0 * k * S * C;                  // d/dy (k cosh^2 2y)
    m.d2g[0][0] = 8.0 * k * (C * C + S * S);       // = 8k cosh 4y
    return m;
}

Christoffel koszul(const MetricJet& m) {
    // Gamma^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij), where the
    // only nonzero coordinate derivative is d_y = dg.
    auto D = [&](int dir, int a, int b) { return dir == 1 ? m.dg[a][b] : 0.0; };
    Christoffel ch;
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                double s = 0.0;
                for (int l = 0; l < 2; ++l)
                    s += m.ginv[k][l] * (D(i, j, l) + D(j, i, l) - D(l, i, j));
                ch.G[k][i][j] = 0.5 * s;
            }
    return ch;
}

// d/dy of the Christoffel symbols, by differentiating the Koszul formula.
void koszul_dy(const MetricJet& m, double dgamma[2][2][2]) {
    auto D = [&](int dir, int a, int b) { return dir == 1 ? m.dg[a][b] : 0.0; };
    auto DD = [&](int dir, int a, int b) { return dir == 1 ? m.d2g[a][b] : 0.0; };
    double dginv[2][2] = {};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            // d/dy g^{ab} = -g^{ac} (d/dy g_cd) g^{db}; diagonal metric.
            double s = 0.0;
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) s += m.ginv[a][c] * m.dg[c][d] * m.ginv[d][b];
            dginv[a][b] = -s;
        }
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                double s = 0.0;
                for (int l = 0; l < 2; ++l) {
                    s += dginv[k][l] * (D(i, j, l) + D(j, i, l) - D(l, i, j));
                    s += m.ginv[k][l] * (DD(i, j, l) + DD(j, i, l) - DD(l, i, j));
                }
                dgamma[k][i][j] = 0.5 * s;
            }
}

// Matrix of J with entries J[k][j] = component k of J(d/dx_j).
void j_matrix(double y, double J[2][2]) {
    const double C = std::cosh(2.0 * y);
    J[0][0] = 0.0;
    J[0][1] = -1.0 / C;
    J[1][0] = -C;
    J[1][1] = 0.0;
}

// d/dy of the J matrix entries.
void j_matrix_dy(double y, double dJ[2][2]) {
    const double C = std::cosh(2.0 * y);
    const double S = std::sinh(2.0 * y);
    dJ[0][0] = 0.0;
    dJ[0][1] = 2.0 * S / (C * C);
    dJ[1][0] = -2.0 * S;
    dJ[1][1] = 0.0;
}

// Curvature components R[k][i][j][v] = R(d_i, d_j, d_k, d_v) in the sign
// convention of the header: R^l_kij = d_j Gamma^l_ik - d_i Gamma^l_jk
// + Gamma^l_jm Gamma^m_ik - Gamma^l_im Gamma^m_jk, lowered with g.
void riemann_components(const SpaceForm& sf, const Point2& p, double R[2][2][2][2]) {
    const MetricJet m = metric_jet(sf, p);
    const Christoffel ch = koszul(m);
    double dgamma[2][2][2];
    koszul_dy(m, dgamma);
    auto dG = [&](int dir, int l, int a, int b) { return dir == 1 ? dgamma[l][a][b] : 0.0; };

    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                double up[2];
                for (int l = 0; l < 2; ++l) {
                    double s = dG(j, l, i, k) - dG(i, l, j, k);
                    for (int mm = 0; mm < 2; ++mm)
                        s += ch.G[l][j][mm] * ch.G[mm][i][k] - ch.G[l][i][mm] * ch.G[mm][j][k];
                    up[l] = s;
                }
                for (int v = 0; v < 2; ++v) {
                    double s = 0.0;
                    for (int l = 0; l < 2; ++l) s += m.g[l][v] * up[l];
                    R[k][i][j][v] = s;
                }
            }
}

}  // namespace

Mat2 metric_at(const SpaceForm& sf, const Point2& p) {
    const double k = 4.0 / sf.c();
    const double C = std::cosh(2.0 * p.y);
    return {k * C * C, 0.0, 0.0, -k};
}

double g_apply(const SpaceForm& sf, const TangentVec& u, const TangentVec& v) {
    if (!(u.base == v.base)) throw BasePointMismatch("g_apply: vectors at different base points");
    const Mat2 g = metric_at(sf, u.base);
    return u.comp.x * (g.m00 * v.comp.x + g.m01 * v.comp.y) +
           u.comp.y * (g.m10 * v.comp.x + g.m11 * v.comp.y);
}

Mat2 J_at(const Point2& p) {
    double J[2][2];
    j_matrix(p.y, J);
    return {J[0][0], J[0][1], J[1][0], J[1][1]};
}

TangentVec J_apply(const TangentVec& u) {
    return {u.base, J_at(u.base) * u.comp};
}

Cotangent Jstar_apply(const Point2& p, const Cotangent& a) {
    if (!(a.base == p)) throw BasePointMismatch("Jstar_apply: covector based elsewhere");
    const double C = std::cosh(2.0 * p.y);
    // dx -> -cosh(2y) dy, dy -> -(1/cosh 2y) dx, extended linearly.
    return {p, {-a.comp.y / C, -a.comp.x * C}};
}

Christoffel christoffel_at(const SpaceForm& sf, const Point2& p) {
    return koszul(metric_jet(sf, p));
}

double nabla_J_norm(const SpaceForm& sf, const Point2& p) {
    const Christoffel ch = christoffel_at(sf, p);
    double J[2][2], dJ[2][2];
    j_matrix(p.y, J);
    j_matrix_dy(p.y, dJ);
    double worst = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
            for (int j = 0; j < 2; ++j) {
                // (nabla_i J)^k_j = d_i J^k_j + Gamma^k_im J^m_j - Gamma^m_ij J^k_m
                double s = (i == 1) ? dJ[k][j] : 0.0;
                for (int mm = 0; mm < 2; ++mm)
                    s += ch.G[k][i][mm] * J[mm][j] - ch.G[mm][i][j] * J[k][mm];
                worst = std::max(worst, std::fabs(s));
            }
    return worst;
}

double riemann_0_4(const SpaceForm& sf, const Point2& p, const TangentVec& X,
                   const TangentVec& Y, const TangentVec& Z, const TangentVec& V) {
    require_same_base(p, X, "riemann_0_4");
    require_same_base(p, Y, "riemann_0_4");
    require_same_base(p, Z, "riemann_0_4");
    require_same_base(p, V, "riemann_0_4");
    double R[2][2][2][2];
    riemann_components(sf, p, R);
    const double xs[2] = {X.comp.x, X.comp.y};
    const double ys[2] = {Y.comp.x, Y.comp.y};
    const double zs[2] = {Z.comp.x, Z.comp.y};
    const double vs[2] = {V.comp.x, V.comp.y};
    double s = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int v = 0; v < 2; ++v) s += R[k][i][j][v] * xs[i] * ys[j] * zs[k] * vs[v];
    return s;
}

double r0_at(const SpaceForm& sf, const Point2& p, const TangentVec& X, const TangentVec& Y,
             const TangentVec& Z, const TangentVec& V) {
    require_same_base(p, X, "r0_at");
    require_same_base(p, Y, "r0_at");
    require_same_base(p, Z, "r0_at");
    require_same_base(p, V, "r0_at");
    const TangentVec JY = J_apply(Y), JZ = J_apply(Z), JV = J_apply(V);
    auto g = [&](const TangentVec& a, const TangentVec& b) { return g_apply(sf, a, b); };
    return 0.25 * (g(X, Z) * g(Y, V) - g(X, V) * g(Y, Z) - g(X, JZ) * g(Y, JV) +
                   g(X, JV) * g(Y, JZ) - 2.0 * g(X, JY) * g(Z, JV));
}

double sectional_curvature(const SpaceForm& sf, const Point2& p, const TangentVec& u,
                           const TangentVec& v) {
    require_same_base(p, u, "sectional_curvature");
    require_same_base(p, v, "sectional_curvature");
    const double guu = g_apply(sf, u, u);
    const double gvv = g_apply(sf, v, v);
    const double guv = g_apply(sf, u, v);
    const double denom = guu * gvv - guv * guv;
    const double scale = std::fabs(guu * gvv) + guv * guv;
    if (std::fabs(denom) <= 1e-10 * scale || scale == 0.0)
        throw DegeneratePlane("sectional_curvature: span{u,v} is degenerate");
    return riemann_0_4(sf, p, u, v, u, v) / denom;
}

double j_sectional_curvature(const SpaceForm& sf, const Point2& p, const TangentVec& u) {
    require_same_base(p, u, "j_sectional_curvature");
    const Mat2 g = metric_at(sf, p);
    const double guu = g_apply(sf, u, u);
    const double scale =
        std::fabs(g.m00) * u.comp.x * u.comp.x + std::fabs(g.m11) * u.comp.y * u.comp.y;
    if (scale == 0.0 || std::fabs(guu) <= 1e-10 * scale)
        throw IsotropicVector("j_sectional_curvature: g(u,u) ~ 0");
    return sectional_curvature(sf, p, u, J_apply(u));
}

double space_form_residual(const SpaceForm& sf, const Point2& p) {
    const TangentVec frame[2] = {{p, {1.0, 0.0}}, {p, {0.0, 1.0}}};
    double worst = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int v = 0; v < 2; ++v) {
                    const double r = riemann_0_4(sf, p, frame[i], frame[j], frame[k], frame[v]);
                    const double r0 = r0_at(sf, p, frame[i], frame[j], frame[k], frame[v]);
                    worst = std::max(worst, std::fabs(r - sf.c() * r0));
                }
    return worst;
}

}  // namespace pk
