#include "wsm/extrinsic/extrinsic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "wsm/ambient/hyperquadric.hpp"
#include "wsm/errors.hpp"

namespace wsm::extrinsic {

using jets::jet;
using linalg::matrix;

namespace {

jet tr(const jet& a, int degree) { return a.degree() == degree ? a : a.truncated(degree); }

/// <v, w> with all factors truncated to the given degree.
jet pair_amb(const matrix<jet>& g, const std::vector<jet>& v, const std::vector<jet>& w, int deg) {
    const int d = static_cast<int>(v.size());
    jet acc = jet::constant(0.0, g(0, 0).num_vars(), deg);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) acc += tr(v[a], deg) * tr(g(a, b), deg) * tr(w[b], deg);
    return acc;
}

double pair_val(const std::vector<std::vector<double>>& g, const std::vector<double>& v,
                const std::vector<double>& w) {
    double acc = 0.0;
    for (std::size_t a = 0; a < v.size(); ++a)
        for (std::size_t b = 0; b < w.size(); ++b) acc += v[a] * g[a][b] * w[b];
    return acc;
}

/// Directional derivative along tangent frame vector k: the frame is carried
/// as coefficient jets over the coordinate pushforward basis.
jet dir(const std::vector<std::vector<jet>>& cc, int k, const jet& f) {
    const int d = f.degree() - 1;
    jet acc = jet::constant(0.0, f.num_vars(), d);
    for (std::size_t l = 0; l < cc[k].size(); ++l) acc += tr(cc[k][l], d) * f.partial(static_cast<int>(l));
    return acc;
}

} // namespace

immersion cylinder_lift(const immersion& base, double axis_lo, double axis_hi) {
    if (!base.t_component.variables().empty())
        throw error(errc::precondition, "cylinder_lift: source already depends on the base interval");
    for (const auto& p : base.params)
        if (p == "s") throw error(errc::precondition, "cylinder_lift: parameter name 's' is taken");
    immersion out;
    out.params.reserve(base.params.size() + 1);
    out.params.push_back("s");
    out.params.insert(out.params.end(), base.params.begin(), base.params.end());
    out.sample_region.reserve(base.sample_region.size() + 1);
    out.sample_region.emplace_back(axis_lo, axis_hi);
    out.sample_region.insert(out.sample_region.end(), base.sample_region.begin(),
                             base.sample_region.end());
    out.t_component = expr::expression::variable("s");
    out.fiber = base.fiber;
    out.hyperquadric_stage = base.hyperquadric_stage;
    return out;
}

geometry compute(const ambient::config& amb, const immersion& imm, const std::vector<double>& u) {
    const int n = static_cast<int>(imm.params.size());
    const int dim = amb.dim();
    const int codim = dim - n;
    if (n < 1 || n > 6) throw error(errc::config, "immersion needs between 1 and 6 parameters");
    if (codim < 1) throw error(errc::config, "immersion has no normal directions");
    if (static_cast<int>(u.size()) != n)
        throw error(errc::config, "parameter point has the wrong dimension");
    {
        std::set<std::string> seen(imm.params.begin(), imm.params.end());
        if (static_cast<int>(seen.size()) != n)
            throw error(errc::config, "duplicate parameter names");
    }
    const int nfiber = imm.hyperquadric_stage ? amb.fiber_dim + 1 : amb.fiber_dim;
    if (static_cast<int>(imm.fiber.size()) != nfiber)
        throw error(errc::config, "fiber component count does not match the ambient fiber");

    std::map<std::string, jet> env;
    for (int i = 0; i < n; ++i) env[imm.params[i]] = jet::variable(i, u[i], n, 4);

    jet t_jet = imm.t_component.eval(env);
    std::vector<jet> x_jets;
    x_jets.reserve(amb.fiber_dim);
    if (imm.hyperquadric_stage) {
        std::vector<jet> y;
        y.reserve(nfiber);
        for (const auto& e : imm.fiber) y.push_back(e.eval(env));
        x_jets = ambient::to_chart(amb, y);
    } else {
        for (const auto& e : imm.fiber) x_jets.push_back(e.eval(env));
    }

    geometry g;
    g.n = n;
    g.codim = codim;
    g.eps = amb.eps;
    g.t = t_jet.value();
    g.x.resize(amb.fiber_dim);
    for (int i = 0; i < amb.fiber_dim; ++i) g.x[i] = x_jets[i].value();
    ambient::validate(amb, {g.t, g.x});

    // Degree-3 stage: pushforwards, ambient metric and connection along the map.
    jet t3 = t_jet.truncated(3);
    std::vector<jet> x3;
    x3.reserve(amb.fiber_dim);
    for (const auto& xj : x_jets) x3.push_back(xj.truncated(3));
    matrix<jet> gamb = ambient::metric(amb, t3, x3);
    std::vector<matrix<jet>> Gam = ambient::christoffel(amb, t3, x3);

    std::vector<std::vector<jet>> V(n);  // [k][A]
    for (int k = 0; k < n; ++k) {
        V[k].reserve(dim);
        V[k].push_back(t_jet.partial(k));
        for (int i = 0; i < amb.fiber_dim; ++i) V[k].push_back(x_jets[i].partial(k));
    }

    matrix<jet> gind(n, n, jet::constant(0.0, n, 3));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gind(i, j) = pair_amb(gamb, V[i], V[j], 3);
    matrix<double> gind0(n, n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gind0(i, j) = gind(i, j).value();
    {
        std::vector<double> ev = linalg::symmetric_eigenvalues(gind0);
        if (ev.front() <= 1e-10)
            throw spacelike_error(ev.front(), "induced metric is not positive definite");
    }

    // Tangent frame by Gram-Schmidt, carried as coefficients over V.
    std::vector<std::vector<jet>> cc(n, std::vector<jet>(n, jet::constant(0.0, n, 3)));
    {
        auto ipc = [&](const std::vector<jet>& vv, const std::vector<jet>& ww) {
            jet acc = jet::constant(0.0, n, 3);
            for (int l = 0; l < n; ++l)
                for (int m = 0; m < n; ++m) acc += vv[l] * gind(l, m) * ww[m];
            return acc;
        };
        for (int k = 0; k < n; ++k) {
            std::vector<jet> w(n, jet::constant(0.0, n, 3));
            w[k] = jet::constant(1.0, n, 3);
            for (int j = 0; j < k; ++j) {
                jet p = ipc(w, cc[j]);
                for (int l = 0; l < n; ++l) w[l] -= p * cc[j][l];
            }
            jet q = ipc(w, w);
            if (q.value() < 1e-12) throw error(errc::frame, "tangent frame degenerated");
            jet inv_len = 1.0 / jets::sqrt(q);
            for (int l = 0; l < n; ++l) cc[k][l] = w[l] * inv_len;
        }
    }
    std::vector<std::vector<jet>> E(n, std::vector<jet>(dim, jet::constant(0.0, n, 3)));
    for (int k = 0; k < n; ++k)
        for (int A = 0; A < dim; ++A) {
            jet acc = jet::constant(0.0, n, 3);
            for (int l = 0; l < n; ++l) acc += cc[k][l] * V[l][A];
            E[k][A] = acc;
        }

    // Normal frame from the ambient coordinate directions, in order.
    std::vector<std::vector<jet>> nor;
    nor.reserve(codim);
    for (int cand = 0; cand < dim && static_cast<int>(nor.size()) < codim; ++cand) {
        std::vector<jet> w(dim, jet::constant(0.0, n, 3));
        w[cand] = jet::constant(1.0, n, 3);
        for (int i = 0; i < n; ++i) {
            jet p = pair_amb(gamb, w, E[i], 3);
            for (int A = 0; A < dim; ++A) w[A] -= p * E[i][A];
        }
        for (std::size_t d = 0; d < nor.size(); ++d) {
            jet p = pair_amb(gamb, w, nor[d], 3);
            for (int A = 0; A < dim; ++A) w[A] -= (g.sigma[d] * p) * nor[d][A];
        }
        jet q = pair_amb(gamb, w, w, 3);
        double qv = q.value();
        double scale = std::max(1.0, std::abs(gamb(cand, cand).value()));
        if (std::abs(qv) < 1e-12 * scale) continue;
        double sg = qv > 0.0 ? 1.0 : -1.0;
        jet inv_len = 1.0 / jets::sqrt(sg * q);
        for (int A = 0; A < dim; ++A) w[A] = w[A] * inv_len;
        nor.push_back(std::move(w));
        g.sigma.push_back(sg);
    }
    if (static_cast<int>(nor.size()) < codim)
        throw error(errc::frame, "normal frame incomplete: coordinate candidates degenerate");
    g.sign_definite = std::all_of(g.sigma.begin(), g.sigma.end(),
                                  [&](double s) { return s == g.sigma.front(); });
    g.sigma_common = g.sign_definite ? g.sigma.front() : 0.0;

    // Ambient covariant derivatives along the tangent frame (degree 2).
    auto nabla = [&](int k, const std::vector<jet>& W) {
        std::vector<jet> out(dim, jet::constant(0.0, n, 2));
        for (int A = 0; A < dim; ++A) {
            jet acc = dir(cc, k, W[A]);
            for (int B = 0; B < dim; ++B)
                for (int C = 0; C < dim; ++C)
                    acc += tr(Gam[A](B, C), 2) * tr(E[k][B], 2) * tr(W[C], 2);
            out[A] = acc;
        }
        return out;
    };
    std::vector<std::vector<std::vector<jet>>> nabE(n), nabN(n);
    for (int k = 0; k < n; ++k) {
        nabE[k].reserve(n);
        for (int j = 0; j < n; ++j) nabE[k].push_back(nabla(k, E[j]));
        nabN[k].reserve(codim);
        for (int b = 0; b < codim; ++b) nabN[k].push_back(nabla(k, nor[b]));
    }

    // Second fundamental form and connection coefficients (degree 2).
    std::vector<matrix<jet>> h(codim, matrix<jet>(n, n, jet::constant(0.0, n, 2)));
    for (int b = 0; b < codim; ++b)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) h[b](i, j) = pair_amb(gamb, nabE[i][j], nor[b], 2);
    std::vector<matrix<jet>> om(n, matrix<jet>(n, n, jet::constant(0.0, n, 2)));
    std::vector<matrix<jet>> nu(n, matrix<jet>(codim, codim, jet::constant(0.0, n, 2)));
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) om[k](i, j) = pair_amb(gamb, nabE[k][i], E[j], 2);
        for (int ga = 0; ga < codim; ++ga)
            for (int be = 0; be < codim; ++be) nu[k](ga, be) = pair_amb(gamb, nabN[k][ga], nor[be], 2);
    }

    g.shape.assign(codim, matrix<double>(n, n, 0.0));
    for (int b = 0; b < codim; ++b)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g.shape[b](i, j) = h[b](i, j).value();
    g.omega.assign(n, matrix<double>(n, n, 0.0));
    g.nu.assign(n, matrix<double>(codim, codim, 0.0));
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g.omega[k](i, j) = om[k](i, j).value();
        for (int ga = 0; ga < codim; ++ga)
            for (int be = 0; be < codim; ++be) g.nu[k](ga, be) = nu[k](ga, be).value();
    }
    g.wein.assign(codim, matrix<double>(n, n, 0.0));
    for (int b = 0; b < codim; ++b)
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i) g.wein[b](k, i) = pair_amb(gamb, nabN[k][b], E[i], 2).value();

    // T and xi: frame components of the coordinate field dt.
    std::vector<jet> tau_j, xi_j;
    tau_j.reserve(n);
    xi_j.reserve(codim);
    for (int i = 0; i < n; ++i) tau_j.push_back(amb.eps * E[i][0]);
    for (int b = 0; b < codim; ++b) xi_j.push_back(amb.eps * nor[b][0]);
    g.tau.resize(n);
    g.xi.resize(codim);
    for (int i = 0; i < n; ++i) g.tau[i] = tau_j[i].value();
    for (int b = 0; b < codim; ++b) g.xi[b] = xi_j[b].value();
    g.t_norm2 = 0.0;
    for (double v : g.tau) g.t_norm2 += v * v;
    g.xi_norm2 = 0.0;
    for (int b = 0; b < codim; ++b) g.xi_norm2 += g.sigma[b] * g.xi[b] * g.xi[b];
    g.dtau.assign(n, std::vector<double>(n, 0.0));
    g.dxi.assign(n, std::vector<double>(codim, 0.0));
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) g.dtau[k][j] = dir(cc, k, tau_j[j]).value();
        for (int b = 0; b < codim; ++b) g.dxi[k][b] = dir(cc, k, xi_j[b]).value();
    }

    // Covariant derivative of the second fundamental form (degree 1), then
    // the second derivative as plain values.
    std::vector<std::vector<matrix<jet>>> hj3(
        codim, std::vector<matrix<jet>>(n, matrix<jet>(n, n, jet::constant(0.0, n, 1))));
    for (int b = 0; b < codim; ++b)
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    jet acc = dir(cc, k, h[b](i, j));
                    for (int ga = 0; ga < codim; ++ga)
                        acc += g.sigma[ga] * (tr(h[ga](i, j), 1) * tr(nu[k](ga, b), 1));
                    for (int p = 0; p < n; ++p) {
                        acc -= tr(om[k](i, p), 1) * tr(h[b](p, j), 1);
                        acc -= tr(om[k](j, p), 1) * tr(h[b](i, p), 1);
                    }
                    hj3[b][k](i, j) = acc;
                }
    g.h3.assign(codim, std::vector<matrix<double>>(n, matrix<double>(n, n, 0.0)));
    g.nabla_alpha_norm2 = 0.0;
    for (int b = 0; b < codim; ++b)
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double v = hj3[b][k](i, j).value();
                    g.h3[b][k](i, j) = v;
                    g.nabla_alpha_norm2 += v * v;
                }
    g.h4_flat.assign(static_cast<std::size_t>(codim) * n * n * n * n, 0.0);
    for (int b = 0; b < codim; ++b)
        for (int l = 0; l < n; ++l)
            for (int k = 0; k < n; ++k)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        double acc = dir(cc, l, hj3[b][k](i, j)).value();
                        for (int ga = 0; ga < codim; ++ga)
                            acc += g.sigma[ga] * g.h3[ga][k](i, j) * g.nu[l](ga, b);
                        for (int p = 0; p < n; ++p) {
                            acc -= g.omega[l](k, p) * g.h3[b][p](i, j);
                            acc -= g.omega[l](i, p) * g.h3[b][k](p, j);
                            acc -= g.omega[l](j, p) * g.h3[b][k](i, p);
                        }
                        g.h4_flat[static_cast<std::size_t>((((b * n + l) * n + k) * n + i) * n + j)] =
                            acc;
                    }

    // Shape operators, mean curvature, |alpha|^2 and its Laplacian.
    g.mean.resize(codim);
    for (int b = 0; b < codim; ++b) g.mean[b] = linalg::trace(g.shape[b]) / n;
    g.mean_norm = 0.0;
    for (double v : g.mean) g.mean_norm += v * v;
    g.mean_norm = std::sqrt(g.mean_norm);
    g.shape_xi = matrix<double>(n, n, 0.0);
    for (int b = 0; b < codim; ++b)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g.shape_xi(i, j) += g.sigma[b] * g.xi[b] * g.shape[b](i, j);

    jet S_jet = jet::constant(0.0, n, 2);
    for (int b = 0; b < codim; ++b)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) S_jet += h[b](i, j) * h[b](i, j);
    g.alpha_norm2 = S_jet.value();
    {
        matrix<double> ginv0 = linalg::inverse(gind0);
        // Christoffel symbols of the induced metric at the point.
        std::vector<matrix<double>> Gi(n, matrix<double>(n, n, 0.0));
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double acc = 0.0;
                    for (int l = 0; l < n; ++l)
                        acc += ginv0(k, l) * (gind(j, l).d1(i) + gind(i, l).d1(j) - gind(i, j).d1(l));
                    Gi[k](i, j) = 0.5 * acc;
                }
        double lap = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double hess = S_jet.d2(i, j);
                for (int k = 0; k < n; ++k) hess -= Gi[k](i, j) * S_jet.d1(k);
                lap += ginv0(i, j) * hess;
            }
        g.laplace_alpha_norm2 = lap;
    }

    // Intrinsic curvature of the induced metric, pushed to the frame.
    {
        matrix<jet> g2(n, n, jet::constant(0.0, n, 2));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g2(i, j) = gind(i, j).truncated(2);
        matrix<jet> ginv2 = linalg::inverse(g2, jet::constant(0.0, n, 2), jet::constant(1.0, n, 2));
        std::vector<matrix<jet>> Gj(n, matrix<jet>(n, n, jet::constant(0.0, n, 2)));
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    jet acc = jet::constant(0.0, n, 2);
                    for (int l = 0; l < n; ++l)
                        acc += ginv2(k, l) *
                               (gind(j, l).partial(i) + gind(i, l).partial(j) - gind(i, j).partial(l));
                    Gj[k](i, j) = 0.5 * acc;
                }
        auto upper = [&](int m, int c, int a, int bdx) {
            double acc = Gj[m](bdx, c).d1(a) - Gj[m](a, c).d1(bdx);
            for (int p = 0; p < n; ++p)
                acc += Gj[m](a, p).value() * Gj[p](bdx, c).value() -
                       Gj[m](bdx, p).value() * Gj[p](a, c).value();
            return acc;
        };
        std::vector<double> rc(static_cast<std::size_t>(n) * n * n * n, 0.0);
        for (int a = 0; a < n; ++a)
            for (int bdx = 0; bdx < n; ++bdx)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) {
                        double acc = 0.0;
                        for (int m = 0; m < n; ++m) acc += gind0(d, m) * upper(m, c, a, bdx);
                        rc[static_cast<std::size_t>(((a * n + bdx) * n + c) * n + d)] = acc;
                    }
        std::vector<std::vector<double>> ccv(n, std::vector<double>(n, 0.0));
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) ccv[k][l] = cc[k][l].value();
        g.rm_frame.assign(static_cast<std::size_t>(n) * n * n * n, 0.0);
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        double acc = 0.0;
                        for (int a = 0; a < n; ++a)
                            for (int bdx = 0; bdx < n; ++bdx)
                                for (int c = 0; c < n; ++c)
                                    for (int d = 0; d < n; ++d)
                                        acc += ccv[k][a] * ccv[l][bdx] * ccv[i][c] * ccv[j][d] *
                                               rc[static_cast<std::size_t>(((a * n + bdx) * n + c) * n +
                                                                           d)];
                        g.rm_frame[static_cast<std::size_t>(((k * n + l) * n + i) * n + j)] = acc;
                    }
    }

    // Normal curvature through the normal connection (independent of the
    // Ricci-equation route the identity checks use).
    g.rperp_jet.assign(static_cast<std::size_t>(n) * n * codim * codim, 0.0);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            for (int ga = 0; ga < codim; ++ga)
                for (int be = 0; be < codim; ++be) {
                    double acc = dir(cc, k, nu[l](ga, be)).value() - dir(cc, l, nu[k](ga, be)).value();
                    for (int de = 0; de < codim; ++de)
                        acc += g.sigma[de] * (g.nu[l](ga, de) * g.nu[k](de, be) -
                                              g.nu[k](ga, de) * g.nu[l](de, be));
                    for (int p = 0; p < n; ++p)
                        acc -= (g.omega[k](l, p) - g.omega[l](k, p)) * g.nu[p](ga, be);
                    g.rperp_jet[static_cast<std::size_t>(((k * n + l) * codim + ga) * codim + be)] =
                        acc;
                }

    // Warp scalars and curvature coefficients at t, with their t-derivatives.
    {
        std::map<std::string, jet> tenv{{"t", jet::variable(0, g.t, 1, 4)}};
        jet a_jet = amb.warp.eval(tenv);
        g.a = a_jet.value();
        g.a1 = a_jet.d1(0);
        g.a2 = a_jet.d2(0, 0);
        jet ap = a_jet.partial(0);
        jet app = ap.partial(0);
        jet at2 = a_jet.truncated(2);
        jet ap2 = ap.truncated(2);
        jet b_jet = (amb.eps * (ap2 * ap2) - amb.c) / (at2 * at2);
        jet big_b_jet = app / at2 - (ap2 * ap2) / (at2 * at2) + (amb.eps * amb.c) / (at2 * at2);
        g.b = b_jet.value();
        g.b_prime = b_jet.d1(0);
        g.big_b = big_b_jet.value();
        g.big_b_prime = big_b_jet.d1(0);
    }

    // Frame bookkeeping for the first-order checks.
    g.frame.assign(n, std::vector<double>(dim, 0.0));
    g.normal.assign(codim, std::vector<double>(dim, 0.0));
    for (int i = 0; i < n; ++i)
        for (int A = 0; A < dim; ++A) g.frame[i][A] = E[i][A].value();
    for (int b = 0; b < codim; ++b)
        for (int A = 0; A < dim; ++A) g.normal[b][A] = nor[b][A].value();
    {
        std::vector<std::vector<double>> gv(dim, std::vector<double>(dim, 0.0));
        for (int A = 0; A < dim; ++A)
            for (int B = 0; B < dim; ++B) gv[A][B] = gamb(A, B).value();
        double worst = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                worst = std::max(worst,
                                 std::abs(pair_val(gv, g.frame[i], g.frame[j]) - (i == j ? 1.0 : 0.0)));
        for (int i = 0; i < n; ++i)
            for (int b = 0; b < codim; ++b)
                worst = std::max(worst, std::abs(pair_val(gv, g.frame[i], g.normal[b])));
        for (int b = 0; b < codim; ++b)
            for (int c = 0; c < codim; ++c)
                worst = std::max(worst, std::abs(pair_val(gv, g.normal[b], g.normal[c]) -
                                                 (b == c ? g.sigma[b] : 0.0)));
        g.frame_orth_err = worst;

        double decomp = 0.0;
        for (int A = 0; A < dim; ++A) {
            double acc = -(A == 0 ? 1.0 : 0.0);
            for (int i = 0; i < n; ++i) acc += g.tau[i] * g.frame[i][A];
            for (int b = 0; b < codim; ++b) acc += g.sigma[b] * g.xi[b] * g.normal[b][A];
            decomp = std::max(decomp, std::abs(acc));
        }
        g.dt_decomp_err = decomp;
    }

    return g;
}

} // namespace wsm::extrinsic
