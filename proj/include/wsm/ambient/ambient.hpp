#pragma once

/** \file
 *  \brief Warped-product ambient spaces: metric, connection, curvature.
 *
 *  The ambient manifold is eps I x_a Q, a one-dimensional base (coordinate t,
 *  metric eps dt^2 with eps = +-1) warped over a semi-Riemannian space-form
 *  fiber of dimension N, curvature parameter c and index s. The fiber is
 *  handled in a conformal chart: metric a(t)^2 phi(x)^2 eta with
 *  phi = 1 / (1 + (c/4)<x,x>_eta) and eta the flat diagonal metric carrying
 *  s trailing minus signs. Ambient coordinate order is (t, x_1, ..., x_N).
 *
 *  Everything geometric is provided twice on purpose: closed-form expressions
 *  in the warp and its derivatives, and a generic route that differentiates
 *  the metric components. The two are equivalence-tested against each other.
 */

#include <string>
#include <utility>
#include <vector>

#include "wsm/expr/expr.hpp"
#include "wsm/jets/jet.hpp"
#include "wsm/linalg/small.hpp"

namespace wsm::ambient {

struct config {
    double eps = 1.0;          ///< sign of the dt^2 term, +1 or -1
    expr::expression warp;     ///< a(t), positive on the interval
    expr::expression warp_d1;  ///< a'
    expr::expression warp_d2;  ///< a''
    double lo = 0.0, hi = 0.0; ///< open t-interval; +-infinity allowed
    int fiber_dim = 0;         ///< N, between 1 and 5
    double c = 0.0;            ///< fiber curvature parameter
    int index = 0;             ///< s, number of negative fiber directions

    int dim() const noexcept { return fiber_dim + 1; }
    /// Fiber sign eta_i, +1 for i < N - s and -1 for the last s directions.
    double eta(int i) const noexcept { return i < fiber_dim - index ? 1.0 : -1.0; }
};

/// Validate parameters, parse the warp (variable `t` only) and differentiate
/// it twice symbolically.
config make_config(double eps, const std::string& warp_src, double lo, double hi,
                   int fiber_dim, double c, int index);

struct chart_point {
    double t = 0.0;
    std::vector<double> x; ///< fiber chart coordinates, size fiber_dim
};

/// Throws chart_domain if p lies outside the interval or the conformal chart.
void validate(const config& amb, const chart_point& p);

/// phi(x) as a jet over whatever variables x carries.
jets::jet conformal_factor(const config& amb, const std::vector<jets::jet>& x);

/// Metric components g_AB over arbitrary jet coordinates; (N+1)x(N+1).
linalg::matrix<jets::jet> metric(const config& amb, const jets::jet& t,
                                 const std::vector<jets::jet>& x);

/// Metric as jets in the ambient coordinates themselves, seeded at p.
linalg::matrix<jets::jet> metric_at(const config& amb, const chart_point& p, int degree);

/// Christoffel symbols Gamma^A_BC in closed form; result[A](B,C).
std::vector<linalg::matrix<jets::jet>> christoffel(const config& amb, const jets::jet& t,
                                                   const std::vector<jets::jet>& x);

/// Generic route: Gamma^A_BC from metric component jets of degree >= 1 in the
/// ambient coordinates. The result has one degree less than the input.
std::vector<linalg::matrix<jets::jet>> christoffel_from_metric(const linalg::matrix<jets::jet>& g);

/// Covariant curvature R(eA, eB, eC, eD) = <R(eA,eB)eC, eD> at p, computed
/// from second derivatives of the metric components; flat index
/// ((A*dim + B)*dim + C)*dim + D. Convention:
/// R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z.
std::vector<double> riemann_from_chart(const config& amb, const chart_point& p);

/// Warp-level curvature coefficients at parameter value t:
///   b  = (eps a'^2 - c) / a^2,
///   B  = a''/a - (a'^2 - eps c) / a^2,
///   b' = 2 eps B a'/a  (t-derivative of b).
/// The ambient has constant curvature kappa = -b exactly when B == 0.
struct curvature_coefficients {
    double b = 0.0, big_b = 0.0, b_prime = 0.0;
};
curvature_coefficients coefficients(const config& amb, double t);

/// Closed-form covariant curvature on ambient-component vectors at p.
double riemann_closed(const config& amb, const chart_point& p, const std::vector<double>& X,
                      const std::vector<double>& Y, const std::vector<double>& Z,
                      const std::vector<double>& W);

/// Scan a sample window of the interval for B == 0; {true, kappa} if constant.
std::pair<bool, double> constant_curvature(const config& amb);

} // namespace wsm::ambient
