#pragma once

/** \file
 *  \brief Extrinsic geometry of a parametrized spacelike submanifold.
 *
 *  An immersion is a list of expressions for the warped-product chart
 *  coordinates in terms of parameters u_1..u_n. Everything downstream is
 *  computed at a single parameter point by seeding the parameters as jet
 *  variables of degree 4 and letting the chain rule do the differentiation:
 *
 *    position (deg 4) -> pushforwards, frames (deg 3) -> second fundamental
 *    form (deg 2) -> its first covariant derivative (deg 1) -> second (deg 0).
 *
 *  Frames are orthonormal: tangents by Gram-Schmidt over the coordinate
 *  pushforwards in parameter order, normals by projecting the ambient
 *  coordinate directions in ambient order and keeping the nondegenerate
 *  ones. That fixed order makes results reproducible; anything reported is
 *  either frame-invariant or explicitly a frame component.
 */

#include <string>
#include <utility>
#include <vector>

#include "wsm/ambient/ambient.hpp"
#include "wsm/expr/expr.hpp"
#include "wsm/linalg/small.hpp"

namespace wsm::extrinsic {

struct immersion {
    std::vector<std::string> params;                        ///< parameter names, jet variable order
    std::vector<std::pair<double, double>> sample_region;   ///< per-parameter box
    expr::expression t_component;                           ///< t(u)
    std::vector<expr::expression> fiber;                    ///< fiber coordinates x(u), or y(u) below
    /// When set, `fiber` holds flat hyperquadric coordinates (pole first,
    /// size N+1) and is pulled back to the conformal chart before use.
    bool hyperquadric_stage = false;
};

/// Extend a t-independent immersion by a new leading parameter running along
/// the base interval: F(s, u) = (s, f_fiber(u)). Precondition: the source
/// t-component is constant and no parameter is already named "s".
immersion cylinder_lift(const immersion& base, double axis_lo, double axis_hi);

/// Everything the identity checks consume, evaluated at one parameter point.
/// Index conventions: i,j,k,l,p tangent (0..n-1); beta,gamma,delta normal
/// (0..codim-1); A,B ambient (0..dim-1). h3 is the first covariant derivative
/// of the second fundamental form, h3[beta][k](i,j) = component along normal
/// beta of (D_k alpha)(E_i, E_j); h4 adds the outer derivative index first.
struct geometry {
    int n = 0;      ///< submanifold dimension
    int codim = 0;  ///< normal bundle rank
    double eps = 1.0;

    double t = 0.0;
    std::vector<double> x;  ///< fiber chart coordinates of the point

    std::vector<double> sigma;   ///< normal signs <e_b, e_b>
    bool sign_definite = true;   ///< all normal signs equal
    double sigma_common = 1.0;   ///< the common sign (0 when mixed)

    // warp scalars at t: a, a', a'', the curvature coefficients b and B,
    // and their t-derivatives.
    double a = 1.0, a1 = 0.0, a2 = 0.0;
    double b = 0.0, big_b = 0.0, b_prime = 0.0, big_b_prime = 0.0;

    std::vector<std::vector<double>> frame;   ///< tangent frame, ambient components [i][A]
    std::vector<std::vector<double>> normal;  ///< normal frame, ambient components [beta][A]

    std::vector<double> tau;  ///< <dt, E_i>, frame components of T
    std::vector<double> xi;   ///< <dt, e_b>, frame components of xi
    double t_norm2 = 0.0;     ///< |T|^2 (positive definite tangent metric)
    double xi_norm2 = 0.0;    ///< <xi, xi> (signed)

    std::vector<linalg::matrix<double>> shape;  ///< A_beta in the tangent frame
    linalg::matrix<double> shape_xi;            ///< A_xi
    std::vector<double> mean;                   ///< H_beta = tr A_beta / n
    double mean_norm = 0.0;                     ///< sqrt(sum H_beta^2)

    double alpha_norm2 = 0.0;          ///< S = sum of squared components of alpha
    double laplace_alpha_norm2 = 0.0;  ///< Laplace-Beltrami of S on the submanifold

    std::vector<std::vector<linalg::matrix<double>>> h3;  ///< [beta][k](i,j)
    double nabla_alpha_norm2 = 0.0;                       ///< sum of squared h3 components
    std::vector<double> h4_flat;                          ///< [beta][l][k][i][j], l outer

    std::vector<linalg::matrix<double>> omega;  ///< [k](i,j) = <D_k E_i, E_j>
    std::vector<linalg::matrix<double>> nu;     ///< [k](g,b) = <D_k e_g, e_b>
    std::vector<linalg::matrix<double>> wein;   ///< [beta](k,i) = <D_k e_beta, E_i>
    std::vector<std::vector<double>> dtau;      ///< [k][j] = E_k(tau_j)
    std::vector<std::vector<double>> dxi;       ///< [k][beta] = E_k(xi_beta)

    std::vector<double> rm_frame;   ///< intrinsic <R(E_k,E_l)E_i, E_j>, n^4 flat
    std::vector<double> rperp_jet;  ///< <Rperp(E_k,E_l)e_g, e_b> via the normal connection

    double frame_orth_err = 0.0;  ///< worst orthonormality defect of the built frames
    double dt_decomp_err = 0.0;   ///< worst component defect of dt = T + xi

    double rm(int k, int l, int i, int j) const {
        return rm_frame[static_cast<std::size_t>(((k * n + l) * n + i) * n + j)];
    }
    double h4(int beta, int l, int k, int i, int j) const {
        return h4_flat[static_cast<std::size_t>((((beta * n + l) * n + k) * n + i) * n + j)];
    }
    double rperp(int k, int l, int gamma, int beta) const {
        return rperp_jet[static_cast<std::size_t>(((k * n + l) * codim + gamma) * codim + beta)];
    }
};

/// Evaluate the immersion at parameter point u. Throws chart_domain when the
/// point leaves the chart or the interval, spacelike_error when the induced
/// metric is not positive definite, frame error when the normal candidates
/// degenerate.
geometry compute(const ambient::config& amb, const immersion& imm, const std::vector<double>& u);

} // namespace wsm::extrinsic
