#include "wsm/identities/identities.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "wsm/errors.hpp"

namespace wsm::identities {

using extrinsic::geometry;
using linalg::matrix;

namespace {

void bump(residual& r, double defect, double term_size) {
    r.abs = std::max(r.abs, std::abs(defect));
    r.scale = std::max(r.scale, std::abs(term_size));
}

double kron(int i, int j) { return i == j ? 1.0 : 0.0; }

matrix<double> commutator(const matrix<double>& a, const matrix<double>& b) {
    matrix<double> ab = linalg::mul(a, b);
    matrix<double> ba = linalg::mul(b, a);
    matrix<double> r(a.rows(), a.cols(), 0.0);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = ab(i, j) - ba(i, j);
    return r;
}

/// Tangent curvature in the frame reconstructed from the Gauss equation;
/// this is the derivative-free route the pseudo-parallel residual uses.
double gauss_rhs(const geometry& g, int k, int l, int i, int j) {
    double acc = g.b * (kron(k, i) * kron(l, j) - kron(l, i) * kron(k, j));
    acc += g.big_b * (kron(k, i) * g.tau[l] * g.tau[j] - kron(l, i) * g.tau[k] * g.tau[j] -
                      kron(k, j) * g.tau[l] * g.tau[i] + kron(l, j) * g.tau[k] * g.tau[i]);
    for (int b = 0; b < g.codim; ++b)
        acc -= g.sigma[b] *
               (g.shape[b](k, i) * g.shape[b](l, j) - g.shape[b](k, j) * g.shape[b](l, i));
    return acc;
}

double quad(const std::vector<double>& v, const matrix<double>& m) {
    double acc = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) acc += v[i] * m(i, j) * v[j];
    return acc;
}

double image_norm2(const matrix<double>& m, const std::vector<double>& v) {
    double acc = 0.0;
    for (int i = 0; i < m.rows(); ++i) {
        double row = 0.0;
        for (int j = 0; j < m.cols(); ++j) row += m(i, j) * v[j];
        acc += row * row;
    }
    return acc;
}

void require_definite(const geometry& g) {
    if (!g.sign_definite)
        throw error(errc::unsupported_signature,
                    "|alpha|^2 decomposition needs a definite normal bundle");
}

struct simons_terms {
    double t[8] = {0, 0, 0, 0, 0, 0, 0, 0};
};

simons_terms full_terms(const geometry& g) {
    const int n = g.n;
    simons_terms s;
    for (int b = 0; b < g.codim; ++b)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) s.t[0] += g.shape[b](i, j) * g.h4(b, i, j, k, k);
    s.t[1] = g.nabla_alpha_norm2;
    for (int b = 0; b < g.codim; ++b) {
        const matrix<double>& A = g.shape[b];
        double trA = linalg::trace(A);
        matrix<double> M(n, n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) M(i, j) = n * A(i, j) - (i == j ? trA : 0.0);
        double mq = quad(g.tau, M);
        s.t[2] += g.eps * g.big_b_prime * mq * g.xi[b];
        s.t[3] -= g.b_prime * mq * g.xi[b];
        double tr_xib = linalg::trace(linalg::mul(g.shape_xi, A));
        s.t[4] += g.big_b * (n * tr_xib - linalg::trace(g.shape_xi) * trA) * g.xi[b];
        double trA2 = linalg::trace(linalg::mul(A, A));
        s.t[5] += g.big_b *
                  (3.0 * quad(g.tau, A) * trA - 2.0 * n * image_norm2(A, g.tau) - g.t_norm2 * trA2);
        s.t[6] += g.b * (trA * trA - n * trA2);
    }
    for (int b = 0; b < g.codim; ++b)
        for (int c = 0; c < g.codim; ++c) {
            const matrix<double>& Ab = g.shape[b];
            const matrix<double>& Ac = g.shape[c];
            matrix<double> comm = commutator(Ac, Ab);
            double trAc = linalg::trace(Ac);
            double tr_b2c = linalg::trace(linalg::mul(linalg::mul(Ab, Ab), Ac));
            double tr_bc = linalg::trace(linalg::mul(Ab, Ac));
            s.t[7] += g.sigma[c] *
                      (trAc * tr_b2c + linalg::trace(linalg::mul(comm, comm)) - tr_bc * tr_bc);
        }
    return s;
}

simons_report assemble(const geometry& g, std::map<std::string, double> terms) {
    simons_report r;
    r.lhs = 0.5 * g.laplace_alpha_norm2;
    r.terms = std::move(terms);
    r.rhs = 0.0;
    r.res.scale = std::max(1.0, std::abs(r.lhs));
    for (const auto& [name, v] : r.terms) {
        r.rhs += v;
        r.res.scale = std::max(r.res.scale, std::abs(v));
    }
    r.res.abs = std::abs(r.lhs - r.rhs);
    return r;
}

} // namespace

fundamental_residuals check_fundamental(const geometry& g) {
    fundamental_residuals out;
    const int n = g.n;
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double lhs = g.rm(k, l, i, j);
                    double rhs = gauss_rhs(g, k, l, i, j);
                    bump(out.gauss, lhs - rhs, std::max(std::abs(lhs), std::abs(rhs)));
                }
    for (int b = 0; b < g.codim; ++b)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                for (int i = 0; i < n; ++i) {
                    double lhs = g.h3[b][l](k, i);
                    double rhs = g.h3[b][k](l, i) +
                                 g.big_b * (g.tau[k] * kron(l, i) - g.tau[l] * kron(k, i)) * g.xi[b];
                    bump(out.codazzi, lhs - rhs, std::max(std::abs(lhs), std::abs(rhs)));
                }
    for (int b = 0; b < g.codim; ++b)
        for (int c = 0; c < g.codim; ++c) {
            matrix<double> comm = commutator(g.shape[b], g.shape[c]);
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double lhs = g.rperp(k, l, c, b);
                    double rhs = comm(k, l);
                    bump(out.ricci, lhs - rhs, std::max(std::abs(lhs), std::abs(rhs)));
                }
        }
    return out;
}

double frame_residuals::max() const {
    return std::max({orthonormality, decomposition, norm_split, covariant_t, covariant_xi,
                     weingarten});
}

frame_residuals check_frames(const geometry& g) {
    frame_residuals out;
    out.orthonormality = g.frame_orth_err;
    out.decomposition = g.dt_decomp_err;
    out.norm_split = std::abs(g.t_norm2 + g.xi_norm2 - g.eps);
    const int n = g.n;
    const double rate = g.a1 / g.a;
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
            double lhs = g.dtau[k][j];
            for (int i = 0; i < n; ++i) lhs += g.tau[i] * g.omega[k](i, j);
            double rhs = rate * (kron(k, j) - g.eps * g.tau[k] * g.tau[j]) + g.shape_xi(k, j);
            out.covariant_t = std::max(out.covariant_t, std::abs(lhs - rhs));
        }
    for (int k = 0; k < n; ++k)
        for (int b = 0; b < g.codim; ++b) {
            double lhs = g.dxi[k][b];
            for (int c = 0; c < g.codim; ++c) lhs += g.sigma[c] * g.xi[c] * g.nu[k](c, b);
            double rhs = -g.eps * rate * g.tau[k] * g.xi[b];
            for (int i = 0; i < n; ++i) rhs -= g.tau[i] * g.shape[b](k, i);
            out.covariant_xi = std::max(out.covariant_xi, std::abs(lhs - rhs));
        }
    for (int b = 0; b < g.codim; ++b)
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                out.weingarten =
                    std::max(out.weingarten, std::abs(g.wein[b](k, i) + g.shape[b](k, i)));
    return out;
}

simons_report check_simons(const geometry& g, const ambient::config& amb, simons_variant variant) {
    require_definite(g);
    const int n = g.n;
    if (variant == simons_variant::full) {
        simons_terms s = full_terms(g);
        std::map<std::string, double> terms;
        const char* names[8] = {"second_trace", "nabla_alpha",  "grad_B",      "grad_b",
                                "mixed_xi",     "shape_T_block", "scalar_block", "commutator_block"};
        for (int i = 0; i < 8; ++i) terms[names[i]] = s.t[i];
        return assemble(g, std::move(terms));
    }

    if (variant == simons_variant::product_space) {
        if (amb.eps != 1.0 || amb.index != 0 ||
            std::abs(g.a - 1.0) + std::abs(g.a1) + std::abs(g.a2) > 1e-12)
            throw error(errc::precondition,
                        "needs an unwarped Riemannian product over the fiber");
        simons_terms s = full_terms(g);
        const double c = amb.c;  // here B = c and b = -c identically
        double tr_xi = linalg::trace(g.shape_xi);
        double tr_xi2 = linalg::trace(linalg::mul(g.shape_xi, g.shape_xi));
        double shape_t = 0.0, scalar = 0.0;
        for (int b = 0; b < g.codim; ++b) {
            const matrix<double>& A = g.shape[b];
            double trA = linalg::trace(A);
            double trA2 = linalg::trace(linalg::mul(A, A));
            shape_t += c * (3.0 * quad(g.tau, A) * trA - 2.0 * n * image_norm2(A, g.tau) -
                            g.t_norm2 * trA2);
            scalar -= c * (trA * trA - n * trA2);
        }
        std::map<std::string, double> terms;
        terms["second_trace"] = s.t[0];
        terms["nabla_alpha"] = s.t[1];
        terms["mixed_xi"] = c * (n * tr_xi2 - tr_xi * tr_xi);
        terms["shape_T_block"] = shape_t;
        terms["scalar_block"] = scalar;
        terms["commutator_block"] = s.t[7];
        return assemble(g, std::move(terms));
    }

    if (g.codim != 1)
        throw error(errc::precondition, "this decomposition needs a hypersurface (codimension 1)");
    const matrix<double>& A = g.shape[0];
    const double delta = g.sigma[0];
    const double H = g.mean[0];
    const double S = g.alpha_norm2;
    const double xin = g.xi[0];
    const double trA3 = linalg::trace(linalg::mul(linalg::mul(A, A), A));
    simons_terms s = full_terms(g);

    switch (variant) {
    case simons_variant::hypersurface: {
        if (delta != g.eps)
            throw error(errc::precondition, "normal sign must match the base sign eps");
        matrix<double> M(n, n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) M(i, j) = A(i, j) - (i == j ? H : 0.0);
        double mq = quad(g.tau, M);
        std::map<std::string, double> terms;
        terms["second_trace"] = s.t[0];
        terms["nabla_alpha"] = s.t[1];
        terms["grad_B"] = n * g.eps * g.big_b_prime * mq * xin;
        terms["grad_b"] = -n * g.b_prime * mq * xin;
        terms["mixed_xi"] = n * (g.eps * g.a2 / g.a - g.b) * (S - n * H * H) * xin * xin;
        terms["shape_T_block"] = g.big_b * (3.0 * n * quad(g.tau, A) * H -
                                            2.0 * n * image_norm2(A, g.tau) - g.t_norm2 * S);
        terms["scalar_block"] = g.b * (n * n * H * H - n * S);
        terms["cubic_block"] = delta * (n * H * trA3 - S * S);
        return assemble(g, std::move(terms));
    }
    case simons_variant::nomizu_smyth: {
        auto cc = ambient::constant_curvature(amb);
        if (!cc.first || amb.eps != 1.0 || amb.index != 0)
            throw error(errc::precondition,
                        "needs a Riemannian constant-curvature ambient space");
        std::map<std::string, double> terms;
        terms["second_trace"] = s.t[0];
        terms["nabla_alpha"] = s.t[1];
        terms["curvature_gap"] = cc.second * n * (S - n * H * H);
        terms["cubic_block"] = n * H * trA3 - S * S;
        return assemble(g, std::move(terms));
    }
    case simons_variant::constant_curvature: {
        auto cc = ambient::constant_curvature(amb);
        if (!cc.first)
            throw error(errc::precondition, "needs a constant-curvature ambient space");
        std::map<std::string, double> terms;
        terms["second_trace"] = s.t[0];
        terms["nabla_alpha"] = s.t[1];
        terms["curvature_gap"] = cc.second * n * (S - n * H * H);
        terms["cubic_block"] = delta * (n * H * trA3 - S * S);
        return assemble(g, std::move(terms));
    }
    default:
        break;
    }
    throw error(errc::case_error, "unknown simons variant");
}

residual eigenvalue_identity(const matrix<double>& a, double kappa, double delta) {
    const int n = a.rows();
    matrix<double> a2 = linalg::mul(a, a);
    matrix<double> a3 = linalg::mul(a2, a);
    double tr1 = linalg::trace(a);
    double tr2 = linalg::trace(a2);
    double tr3 = linalg::trace(a3);
    double lhs = kappa * (n * tr2 - tr1 * tr1) + delta * (tr1 * tr3 - tr2 * tr2);
    std::vector<double> lam = linalg::symmetric_eigenvalues(a);
    double rhs = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double d = lam[i] - lam[j];
            rhs += d * d * (kappa + delta * lam[i] * lam[j]);
        }
    residual r;
    r.abs = std::abs(lhs - rhs);
    r.scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    return r;
}

namespace {

/// Residual components res0 + psi * cpsi over all (beta, k, l, i, j).
void pseudo_components(const geometry& g, std::vector<double>& res0, std::vector<double>& cpsi) {
    const int n = g.n;
    res0.clear();
    cpsi.clear();
    res0.reserve(static_cast<std::size_t>(g.codim) * n * n * n * n);
    cpsi.reserve(res0.capacity());
    std::vector<matrix<double>> comm(static_cast<std::size_t>(g.codim) * g.codim,
                                     matrix<double>(n, n, 0.0));
    for (int b = 0; b < g.codim; ++b)
        for (int c = 0; c < g.codim; ++c)
            comm[static_cast<std::size_t>(b) * g.codim + c] = commutator(g.shape[b], g.shape[c]);
    for (int b = 0; b < g.codim; ++b)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        double r = 0.0;
                        for (int c = 0; c < g.codim; ++c)
                            r += g.sigma[c] * g.shape[c](i, j) *
                                 comm[static_cast<std::size_t>(b) * g.codim + c](k, l);
                        for (int p = 0; p < n; ++p) {
                            r -= gauss_rhs(g, k, l, i, p) * g.shape[b](p, j);
                            r -= gauss_rhs(g, k, l, j, p) * g.shape[b](i, p);
                        }
                        double c = kron(l, i) * g.shape[b](k, j) - kron(k, i) * g.shape[b](l, j) +
                                   kron(l, j) * g.shape[b](i, k) - kron(k, j) * g.shape[b](i, l);
                        res0.push_back(r);
                        cpsi.push_back(c);
                    }
}

} // namespace

double pseudo_residual(const geometry& g, double psi) {
    std::vector<double> res0, cpsi;
    pseudo_components(g, res0, cpsi);
    double worst = 0.0;
    for (std::size_t i = 0; i < res0.size(); ++i)
        worst = std::max(worst, std::abs(res0[i] + psi * cpsi[i]));
    return worst;
}

pseudo_fit fit_psi(const geometry& g) {
    std::vector<double> res0, cpsi;
    pseudo_components(g, res0, cpsi);
    double num = 0.0, den = 0.0, worst0 = 0.0;
    for (std::size_t i = 0; i < res0.size(); ++i) {
        num += res0[i] * cpsi[i];
        den += cpsi[i] * cpsi[i];
        worst0 = std::max(worst0, std::abs(res0[i]));
    }
    pseudo_fit out;
    out.c_norm = std::sqrt(den);
    out.residual_at_zero = worst0;
    out.underdetermined = out.c_norm < 1e-12;
    out.psi = out.underdetermined ? 0.0 : -num / den;
    double worst = 0.0;
    for (std::size_t i = 0; i < res0.size(); ++i)
        worst = std::max(worst, std::abs(res0[i] + out.psi * cpsi[i]));
    out.residual_at_fit = worst;
    return out;
}

residual check_pp_identity(const geometry& g, double psi, double pre_tol) {
    double res = pseudo_residual(g, psi);
    if (res > pre_tol)
        throw error(errc::precondition,
                    "submanifold is not pseudo-parallel at the given psi");
    require_definite(g);
    const int n = g.n;
    double block_b = 0.0, block_psi = 0.0, block_comm = 0.0;
    for (int b = 0; b < g.codim; ++b) {
        const matrix<double>& A = g.shape[b];
        double trA = linalg::trace(A);
        double trA2 = linalg::trace(linalg::mul(A, A));
        block_b += g.big_b * (n * image_norm2(A, g.tau) - 2.0 * quad(g.tau, A) * trA +
                              g.t_norm2 * trA2);
        block_psi += (psi + g.b) * (n * trA2 - trA * trA);
    }
    for (int b = 0; b < g.codim; ++b)
        for (int c = 0; c < g.codim; ++c) {
            const matrix<double>& Ab = g.shape[b];
            const matrix<double>& Ac = g.shape[c];
            matrix<double> comm = commutator(Ab, Ac);
            block_comm += g.sigma[c] *
                          (linalg::trace(Ac) * linalg::trace(linalg::mul(linalg::mul(Ab, Ab), Ac)) +
                           linalg::trace(linalg::mul(comm, comm)) -
                           linalg::trace(linalg::mul(Ab, Ac)) * linalg::trace(linalg::mul(Ab, Ac)));
        }
    residual r;
    r.abs = std::abs(block_b + block_psi - block_comm);
    r.scale = std::max({1.0, std::abs(block_b), std::abs(block_psi), std::abs(block_comm)});
    return r;
}

const char* to_string(threshold_case c) {
    switch (c) {
    case threshold_case::riemannian: return "riemannian";
    case threshold_case::lorentzian_rw: return "lorentzian_rw";
    case threshold_case::definite_negative: return "definite_negative";
    }
    return "?";
}

const char* to_string(threshold_prediction p) {
    switch (p) {
    case threshold_prediction::geodesic_point: return "geodesic_point";
    case threshold_prediction::hypotheses_not_met: return "hypotheses_not_met";
    case threshold_prediction::not_extremal: return "not_extremal";
    }
    return "?";
}

threshold_report threshold_classify(const geometry& g, const ambient::config& amb, double psi) {
    threshold_report out;
    out.psi = psi;
    out.big_b = g.big_b;
    out.alpha_norm2 = g.alpha_norm2;
    out.psi_star = -(g.big_b * g.t_norm2 + g.n * g.b) / g.n;
    out.extremal = g.mean_norm <= 1e-10;

    const int m = g.codim - 1;
    bool lower = false;  // whether the case demands B <= 0 and psi <= psi_star
    if (amb.index == 0 && amb.eps > 0) {
        out.case_tag = threshold_case::riemannian;
    } else if (amb.index == 0 && amb.eps < 0) {
        out.case_tag = threshold_case::lorentzian_rw;
        lower = true;
        if (m != 0)
            throw error(errc::case_error,
                        "Lorentzian case covers hypersurfaces only (timelike normal)");
    } else {
        out.case_tag = threshold_case::definite_negative;
        lower = true;
        int required = m + (amb.eps > 0 ? 1 : 0);
        bool all_timelike =
            std::all_of(g.sigma.begin(), g.sigma.end(), [](double s) { return s < 0.0; });
        if (amb.index != required || !all_timelike)
            throw error(errc::case_error,
                        "fiber index does not make the normal bundle negative definite");
    }

    const double slack = 1e-10;
    out.b_sign_ok = lower ? g.big_b <= slack : g.big_b >= -slack;
    out.psi_ok = lower ? psi <= out.psi_star + slack : psi >= out.psi_star - slack;
    double worst_at = 0.0;
    for (int b = 0; b < g.codim; ++b)
        worst_at = std::max(worst_at, std::sqrt(image_norm2(g.shape[b], g.tau)));
    out.waiver = worst_at <= 1e-10;
    out.hypotheses_met = out.psi_ok && (out.b_sign_ok || out.waiver);

    if (!out.extremal)
        out.prediction = threshold_prediction::not_extremal;
    else if (out.hypotheses_met)
        out.prediction = threshold_prediction::geodesic_point;
    else
        out.prediction = threshold_prediction::hypotheses_not_met;
    return out;
}

double mean_normal_curvature_defect(const geometry& g) {
    double worst = 0.0;
    for (int b = 0; b < g.codim; ++b) {
        matrix<double> acc(g.n, g.n, 0.0);
        for (int c = 0; c < g.codim; ++c) {
            matrix<double> comm = commutator(g.shape[b], g.shape[c]);
            for (int k = 0; k < g.n; ++k)
                for (int l = 0; l < g.n; ++l) acc(k, l) += g.sigma[c] * g.mean[c] * comm(k, l);
        }
        for (int k = 0; k < g.n; ++k)
            for (int l = 0; l < g.n; ++l) worst = std::max(worst, std::abs(acc(k, l)));
    }
    return worst;
}

double normal_flatness_defect(const geometry& g) {
    double worst = 0.0;
    for (int b = 0; b < g.codim; ++b)
        for (int c = b + 1; c < g.codim; ++c) {
            matrix<double> comm = commutator(g.shape[b], g.shape[c]);
            for (int k = 0; k < g.n; ++k)
                for (int l = 0; l < g.n; ++l) worst = std::max(worst, std::abs(comm(k, l)));
        }
    return worst;
}

} // namespace wsm::identities
