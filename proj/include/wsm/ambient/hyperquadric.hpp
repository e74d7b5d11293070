#pragma once

/** \file
 *  \brief Transfer between the conformal chart and hyperquadric coordinates.
 *
 *  For c != 0 the fiber is realized as the quadric <y,y> = 1/c in flat
 *  coordinates y = (y0, ybar_1..ybar_N), where the inner product weights are
 *  sign(c) on the pole coordinate y0 (always listed first) and eta_i on the
 *  rest. The chart covers everything except the antipode of the pole:
 *
 *    u  = (c/4) <x,x>_eta,   y0 = (1 - u) / ((1 + u) sqrt|c|),
 *    ybar = x / (1 + u);     back: x = 2 ybar / (1 + sqrt|c| y0).
 *
 *  Both directions work verbatim on doubles and on jets.
 */

#include <cmath>
#include <vector>

#include "wsm/ambient/ambient.hpp"
#include "wsm/errors.hpp"

namespace wsm::ambient {

namespace detail {
inline double scalar_value(double v) { return v; }
inline double scalar_value(const jets::jet& v) { return v.value(); }
} // namespace detail

/// Chart -> hyperquadric; input size N, output size N+1 with the pole first.
template <class T>
std::vector<T> from_chart(const config& amb, const std::vector<T>& x) {
    if (amb.c == 0.0) throw error(errc::config, "hyperquadric transfer needs c != 0");
    if (static_cast<int>(x.size()) != amb.fiber_dim)
        throw error(errc::shape, "from_chart: wrong fiber dimension");
    const double rc = std::sqrt(std::abs(amb.c));
    T u = (0.25 * amb.c * amb.eta(0)) * (x[0] * x[0]);
    for (int i = 1; i < amb.fiber_dim; ++i) u += (0.25 * amb.c * amb.eta(i)) * (x[i] * x[i]);
    T denom = u + 1.0;
    if (!(detail::scalar_value(denom) > 0.0))
        throw error(errc::chart_domain, "point outside the conformal chart");
    std::vector<T> y;
    y.reserve(amb.fiber_dim + 1);
    y.push_back((1.0 - u) / (rc * denom));
    for (int i = 0; i < amb.fiber_dim; ++i) y.push_back(x[i] / denom);
    return y;
}

/// Hyperquadric -> chart; input size N+1 (pole first), output size N.
template <class T>
std::vector<T> to_chart(const config& amb, const std::vector<T>& y) {
    if (amb.c == 0.0) throw error(errc::config, "hyperquadric transfer needs c != 0");
    if (static_cast<int>(y.size()) != amb.fiber_dim + 1)
        throw error(errc::shape, "to_chart: wrong hyperquadric dimension");
    const double rc = std::sqrt(std::abs(amb.c));
    T denom = rc * y[0] + 1.0;
    if (!(detail::scalar_value(denom) > 1e-12))
        throw error(errc::chart_domain, "chart undefined at the antipode of the pole");
    std::vector<T> x;
    x.reserve(amb.fiber_dim);
    for (int i = 0; i < amb.fiber_dim; ++i) x.push_back((2.0 * y[i + 1]) / denom);
    return x;
}

/// Quadric constraint value <y,y> - 1/c; zero on the hyperquadric.
template <class T>
T quadric_residual(const config& amb, const std::vector<T>& y) {
    if (amb.c == 0.0) throw error(errc::config, "hyperquadric transfer needs c != 0");
    const double s0 = amb.c > 0.0 ? 1.0 : -1.0;
    T r = s0 * (y[0] * y[0]);
    for (int i = 0; i < amb.fiber_dim; ++i) r += amb.eta(i) * (y[i + 1] * y[i + 1]);
    return r - 1.0 / amb.c;
}

} // namespace wsm::ambient
