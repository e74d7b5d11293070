#pragma once

/** \file
 *  \brief Identity checks on the extrinsic data of a spacelike submanifold.
 *
 *  Every check returns residuals, never booleans: the caller owns the
 *  tolerance. Relative residuals are measured against the largest term that
 *  enters the identity, floored at 1 so that identities between tiny
 *  quantities are judged absolutely.
 */

#include <map>
#include <string>

#include "wsm/ambient/ambient.hpp"
#include "wsm/extrinsic/extrinsic.hpp"
#include "wsm/linalg/small.hpp"

namespace wsm::identities {

struct residual {
    double abs = 0.0;
    double scale = 1.0;
    double rel() const { return abs / scale; }
};

/// Gauss, Codazzi and Ricci equations of the immersion. Gauss compares the
/// intrinsic curvature of the induced metric with the ambient curvature and
/// shape terms; Codazzi the symmetry defect of the derivative of the second
/// fundamental form; Ricci the jet-route normal curvature against the shape
/// operator commutators.
struct fundamental_residuals {
    residual gauss, codazzi, ricci;
};
fundamental_residuals check_fundamental(const extrinsic::geometry& g);

/// First-order structure equations: frame orthonormality, dt = T + xi,
/// <T,T> + <xi,xi> = eps, the covariant derivatives of T and xi, and the
/// Weingarten duality <D_X e, Y> = -<A_e X, Y>.
struct frame_residuals {
    double orthonormality = 0.0;
    double decomposition = 0.0;
    double norm_split = 0.0;
    double covariant_t = 0.0;
    double covariant_xi = 0.0;
    double weingarten = 0.0;
    double max() const;
};
frame_residuals check_frames(const extrinsic::geometry& g);

/// The Simons-type decomposition of (1/2) Laplacian |alpha|^2 into the eight
/// curvature and shape-operator terms, plus the specializations that collapse
/// it under extra hypotheses. Preconditions throw errc::precondition.
enum class simons_variant {
    full,                ///< general warped-product form
    hypersurface,        ///< codimension 1, normal sign equal to eps
    nomizu_smyth,        ///< Riemannian constant-curvature ambient, codim 1
    constant_curvature,  ///< constant-curvature ambient, codim 1
    product_space,       ///< unwarped Riemannian product over a space form
};
struct simons_report {
    double lhs = 0.0;  ///< (1/2) Laplacian |alpha|^2
    double rhs = 0.0;
    std::map<std::string, double> terms;
    residual res;
};
simons_report check_simons(const extrinsic::geometry& g, const ambient::config& amb,
                           simons_variant variant);

/// Pointwise trace identity behind the principal-curvature gap arguments:
/// kappa (n tr A^2 - (tr A)^2) + delta (tr A tr A^3 - (tr A^2)^2)
///   = sum_{i<j} (l_i - l_j)^2 (kappa + delta l_i l_j).
residual eigenvalue_identity(const linalg::matrix<double>& a, double kappa, double delta);

/// Residual of R(X,Y).alpha = psi (X wedge Y).alpha over all frame tuples;
/// affine in psi by construction. `fit_psi` minimizes the Frobenius norm of
/// the residual over psi.
double pseudo_residual(const extrinsic::geometry& g, double psi);
struct pseudo_fit {
    double psi = 0.0;
    double residual_at_fit = 0.0;
    double residual_at_zero = 0.0;
    double c_norm = 0.0;          ///< size of the psi coefficient tensor
    bool underdetermined = false; ///< coefficient vanished; psi reported as 0
};
pseudo_fit fit_psi(const extrinsic::geometry& g);

/// Scalar identity satisfied by extremal pseudo-parallel submanifolds.
/// Precondition: the pseudo-parallel residual at psi is below pre_tol.
residual check_pp_identity(const extrinsic::geometry& g, double psi, double pre_tol = 1e-7);

/// Threshold classification for the geodesic-point alternative. The case tag
/// is decided by the ambient signature; psi_star = -(B |T|^2 + n b)/n. The
/// sign condition on B is waived when every A_beta T vanishes.
enum class threshold_case { riemannian, lorentzian_rw, definite_negative };
enum class threshold_prediction { geodesic_point, hypotheses_not_met, not_extremal };
struct threshold_report {
    threshold_case case_tag = threshold_case::riemannian;
    double psi = 0.0;
    double psi_star = 0.0;
    double big_b = 0.0;
    double alpha_norm2 = 0.0;
    bool extremal = false;
    bool b_sign_ok = false;
    bool psi_ok = false;
    bool waiver = false;
    bool hypotheses_met = false;
    threshold_prediction prediction = threshold_prediction::hypotheses_not_met;
};
threshold_report threshold_classify(const extrinsic::geometry& g, const ambient::config& amb,
                                    double psi);
const char* to_string(threshold_case c);
const char* to_string(threshold_prediction p);

/// Normal curvature applied to the mean curvature direction,
/// max |<Rperp(E_k,E_l) H, e_beta>|; vanishes for pseudo-parallel immersions.
double mean_normal_curvature_defect(const extrinsic::geometry& g);

/// Flatness of the normal bundle: max |[A_gamma, A_beta]| component.
double normal_flatness_defect(const extrinsic::geometry& g);

} // namespace wsm::identities
