#include <algorithm>
#include <cmath>
#include <limits>

#include "wsm/ambient/ambient.hpp"
#include "wsm/errors.hpp"

namespace wsm::ambient {

namespace {

std::map<std::string, jets::jet> warp_env(const jets::jet& t) { return {{"t", t}}; }

jets::jet zero_like(const jets::jet& model) {
    return jets::jet::constant(0.0, model.num_vars(), model.degree());
}

} // namespace

config make_config(double eps, const std::string& warp_src, double lo, double hi,
                   int fiber_dim, double c, int index) {
    if (eps != 1.0 && eps != -1.0) throw error(errc::config, "eps must be +1 or -1");
    if (fiber_dim < 1 || fiber_dim > 5)
        throw error(errc::config, "fiber dimension must be between 1 and 5");
    if (index < 0 || index > fiber_dim)
        throw error(errc::config, "fiber index must lie in [0, fiber_dim]");
    if (!(lo < hi)) throw error(errc::config, "empty t-interval");
    config amb;
    amb.eps = eps;
    amb.warp = expr::parse(warp_src);
    for (const auto& v : amb.warp.variables())
        if (v != "t") throw error(errc::config, "warp may only depend on t, found '" + v + "'");
    amb.warp_d1 = amb.warp.derivative("t");
    amb.warp_d2 = amb.warp_d1.derivative("t");
    amb.lo = lo;
    amb.hi = hi;
    amb.fiber_dim = fiber_dim;
    amb.c = c;
    amb.index = index;
    return amb;
}

void validate(const config& amb, const chart_point& p) {
    if (static_cast<int>(p.x.size()) != amb.fiber_dim)
        throw error(errc::shape, "chart point has wrong fiber dimension");
    if (!(p.t > amb.lo && p.t < amb.hi))
        throw error(errc::chart_domain, "t outside the warp interval");
    double q = 0.0;
    for (int i = 0; i < amb.fiber_dim; ++i) q += amb.eta(i) * p.x[i] * p.x[i];
    if (!(1.0 + 0.25 * amb.c * q > 0.0))
        throw error(errc::chart_domain, "point outside the conformal chart");
    if (!(amb.warp.eval_scalar({{"t", p.t}}) > 0.0))
        throw error(errc::chart_domain, "warp not positive at t");
}

jets::jet conformal_factor(const config& amb, const std::vector<jets::jet>& x) {
    if (static_cast<int>(x.size()) != amb.fiber_dim)
        throw error(errc::shape, "conformal_factor: wrong fiber dimension");
    jets::jet q = jets::jet::constant(1.0, x[0].num_vars(), x[0].degree());
    for (int i = 0; i < amb.fiber_dim; ++i) q += (0.25 * amb.c * amb.eta(i)) * (x[i] * x[i]);
    if (!(q.value() > 0.0)) throw error(errc::chart_domain, "point outside the conformal chart");
    return jets::recip(q);
}

linalg::matrix<jets::jet> metric(const config& amb, const jets::jet& t,
                                 const std::vector<jets::jet>& x) {
    const int d = amb.dim();
    const jets::jet zero = zero_like(t);
    linalg::matrix<jets::jet> g(d, d, zero);
    g(0, 0) = jets::jet::constant(amb.eps, t.num_vars(), t.degree());
    const jets::jet a = amb.warp.eval(warp_env(t));
    const jets::jet phi = conformal_factor(amb, x);
    const jets::jet scale = (a * a) * (phi * phi);
    for (int i = 0; i < amb.fiber_dim; ++i) g(i + 1, i + 1) = amb.eta(i) * scale;
    return g;
}

linalg::matrix<jets::jet> metric_at(const config& amb, const chart_point& p, int degree) {
    validate(amb, p);
    const int d = amb.dim();
    jets::jet t = jets::jet::variable(p.t, 0, d, degree);
    std::vector<jets::jet> x;
    for (int i = 0; i < amb.fiber_dim; ++i)
        x.push_back(jets::jet::variable(p.x[i], i + 1, d, degree));
    return metric(amb, t, x);
}

std::vector<linalg::matrix<jets::jet>> christoffel(const config& amb, const jets::jet& t,
                                                   const std::vector<jets::jet>& x) {
    const int d = amb.dim();
    const jets::jet zero = zero_like(t);
    std::vector<linalg::matrix<jets::jet>> gam(d, linalg::matrix<jets::jet>(d, d, zero));

    const auto env = warp_env(t);
    const jets::jet a = amb.warp.eval(env);
    const jets::jet ap = amb.warp_d1.eval(env);
    const jets::jet phi = conformal_factor(amb, x);
    const jets::jet phi2 = phi * phi;
    const jets::jet ratio = ap / a;

    std::vector<jets::jet> w;
    for (int i = 0; i < amb.fiber_dim; ++i)
        w.push_back((-0.5 * amb.c * amb.eta(i)) * (x[i] * phi));

    const jets::jet mixed = (-amb.eps) * (a * ap) * phi2;
    for (int i = 0; i < amb.fiber_dim; ++i) {
        gam[0](i + 1, i + 1) = amb.eta(i) * mixed;
        gam[i + 1](0, i + 1) = ratio;
        gam[i + 1](i + 1, 0) = ratio;
    }
    for (int i = 0; i < amb.fiber_dim; ++i)
        for (int j = 0; j < amb.fiber_dim; ++j)
            for (int k = 0; k < amb.fiber_dim; ++k) {
                jets::jet v = zero;
                if (i == j) v += w[k];
                if (i == k) v += w[j];
                if (j == k) v -= (amb.eta(j) * amb.eta(i)) * w[i];
                if (i == j || i == k || j == k) gam[i + 1](j + 1, k + 1) = v;
            }
    return gam;
}

std::vector<linalg::matrix<jets::jet>> christoffel_from_metric(const linalg::matrix<jets::jet>& g) {
    const int d = g.rows();
    const jets::jet& model = g(0, 0);
    if (model.degree() < 1)
        throw error(errc::shape, "christoffel_from_metric needs metric jets of degree >= 1");
    const int out_deg = model.degree() - 1;
    const jets::jet zero = jets::jet::constant(0.0, model.num_vars(), model.degree());
    const jets::jet one = jets::jet::constant(1.0, model.num_vars(), model.degree());
    linalg::matrix<jets::jet> ginv = linalg::inverse(g, zero, one);

    std::vector<linalg::matrix<jets::jet>> gam(
        d, linalg::matrix<jets::jet>(d, d, zero.truncated(out_deg)));
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = b; c < d; ++c) {
                jets::jet sum = zero.truncated(out_deg);
                for (int e = 0; e < d; ++e) {
                    jets::jet bracket = g(e, c).partial(b) + g(e, b).partial(c) - g(b, c).partial(e);
                    sum += ginv(a, e).truncated(out_deg) * bracket;
                }
                sum = 0.5 * sum;
                gam[a](b, c) = sum;
                gam[a](c, b) = sum;
            }
    return gam;
}

std::vector<double> riemann_from_chart(const config& amb, const chart_point& p) {
    const int d = amb.dim();
    const auto g = metric_at(amb, p, 2);
    const auto gam = christoffel_from_metric(g); // degree 1

    // R^E_CAB = dA Gam^E_BC - dB Gam^E_AC + Gam^E_AF Gam^F_BC - Gam^E_BF Gam^F_AC
    std::vector<double> upper(static_cast<std::size_t>(d) * d * d * d, 0.0);
    auto up = [&](int e, int c, int a, int b) -> double& {
        return upper[static_cast<std::size_t>(((e * d + c) * d + a)) * d + b];
    };
    for (int e = 0; e < d; ++e)
        for (int c = 0; c < d; ++c)
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) {
                    double v = gam[e](b, c).d1(a) - gam[e](a, c).d1(b);
                    for (int f = 0; f < d; ++f)
                        v += gam[e](a, f).value() * gam[f](b, c).value() -
                             gam[e](b, f).value() * gam[f](a, c).value();
                    up(e, c, a, b) = v;
                }

    std::vector<double> rbar(static_cast<std::size_t>(d) * d * d * d, 0.0);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int w = 0; w < d; ++w) {
                    double v = 0.0;
                    for (int e = 0; e < d; ++e) v += g(w, e).value() * up(e, c, a, b);
                    rbar[static_cast<std::size_t>(((a * d + b) * d + c)) * d + w] = v;
                }
    return rbar;
}

curvature_coefficients coefficients(const config& amb, double t) {
    const std::map<std::string, double> env{{"t", t}};
    const double a = amb.warp.eval_scalar(env);
    const double ap = amb.warp_d1.eval_scalar(env);
    const double app = amb.warp_d2.eval_scalar(env);
    if (!(a > 0.0)) throw error(errc::chart_domain, "warp not positive at t");
    curvature_coefficients k;
    k.b = (amb.eps * ap * ap - amb.c) / (a * a);
    k.big_b = app / a - (ap * ap - amb.eps * amb.c) / (a * a);
    k.b_prime = 2.0 * amb.eps * k.big_b * ap / a;
    return k;
}

double riemann_closed(const config& amb, const chart_point& p, const std::vector<double>& X,
                      const std::vector<double>& Y, const std::vector<double>& Z,
                      const std::vector<double>& W) {
    const int d = amb.dim();
    const auto gj = metric_at(amb, p, 0);
    linalg::matrix<double> g(d, d, 0.0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = gj(i, j).value();
    auto ip = [&](const std::vector<double>& u, const std::vector<double>& v) {
        double s = 0.0;
        for (int i = 0; i < d; ++i) s += u[i] * g(i, i) * v[i];
        return s;
    };
    // <V, dt> = eps V^0 since the metric is block diagonal.
    auto ipt = [&](const std::vector<double>& v) { return amb.eps * v[0]; };

    const auto k = coefficients(amb, p.t);
    const double xz = ip(X, Z), yw = ip(Y, W), yz = ip(Y, Z), xw = ip(X, W);
    const double xt = ipt(X), yt = ipt(Y), zt = ipt(Z), wt = ipt(W);
    return k.b * (xz * yw - yz * xw) +
           k.big_b * (xz * yt * wt - yz * xt * wt - xw * yt * zt + yw * xt * zt);
}

std::pair<bool, double> constant_curvature(const config& amb) {
    const double inf = std::numeric_limits<double>::infinity();
    double lo = amb.lo, hi = amb.hi;
    if (lo == -inf && hi == inf) {
        lo = -1.5;
        hi = 1.5;
    } else if (lo == -inf) {
        lo = hi - 3.1;
        hi = hi - 0.1;
    } else if (hi == inf) {
        hi = lo + 3.1;
        lo = lo + 0.1;
    } else {
        const double pad = 0.05 * (hi - lo);
        lo += pad;
        hi -= pad;
    }
    const int samples = 16;
    double kappa = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double t = lo + (hi - lo) * i / (samples - 1);
        const auto k = coefficients(amb, t);
        if (std::abs(k.big_b) > 1e-10) return {false, 0.0};
        if (i == 0) kappa = -k.b;
    }
    return {true, kappa};
}

} // namespace wsm::ambient
