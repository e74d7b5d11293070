#include "wsm/jets/jet.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include "wsm/jets/kernels.hpp"

namespace wsm::jets {

namespace {

double factorial_of(const mono& m) {
    static const double fact[5] = {1.0, 1.0, 2.0, 6.0, 24.0};
    double f = 1.0;
    for (int i = 0; i < max_vars; ++i) f *= fact[m[i]];
    return f;
}

[[noreturn]] void bad_rank(const char* what) { throw error(errc::shape, what); }

} // namespace

jet jet::constant(double value, int num_vars, int degree) {
    jet r(layout::get(num_vars, degree), 0.0);
    r.c_[0] = value;
    return r;
}

jet jet::variable(int var, double value, int num_vars, int degree) {
    if (var < 0 || var >= num_vars)
        throw error(errc::shape, "seed variable index " + std::to_string(var) + " out of range");
    if (degree < 1) throw error(errc::shape, "seed requires degree >= 1");
    jet r(layout::get(num_vars, degree), 0.0);
    r.c_[0] = value;
    mono m{};
    m[var] = 1;
    r.c_[r.lay_->rank_of(m)] = 1.0;
    return r;
}

double jet::coeff(const mono& m) const {
    int r = lay_->rank_of(m);
    if (r < 0) bad_rank("coefficient exponent outside layout");
    return c_[r];
}

void jet::set_coeff(const mono& m, double v) {
    int r = lay_->rank_of(m);
    if (r < 0) bad_rank("coefficient exponent outside layout");
    c_[r] = v;
}

double jet::deriv(const mono& m) const { return coeff(m) * factorial_of(m); }

double jet::d1(int i) const {
    mono m{};
    m[i] = 1;
    return deriv(m);
}

double jet::d2(int i, int j) const {
    mono m{};
    ++m[i];
    ++m[j];
    return deriv(m);
}

jet jet::partial(int i) const {
    if (degree() < 1) throw error(errc::shape, "partial of a degree-0 jet");
    if (i < 0 || i >= num_vars()) bad_rank("partial variable index out of range");
    jet r(layout::get(num_vars(), degree() - 1), 0.0);
    for (int rk = 0; rk < r.size(); ++rk) {
        mono m = r.lay_->monos[rk];
        ++m[i];
        r.c_[rk] = c_[lay_->rank_of(m)] * static_cast<double>(m[i]);
    }
    return r;
}

jet jet::truncated(int degree) const {
    if (degree > this->degree()) throw error(errc::shape, "truncation cannot raise the degree");
    if (degree == this->degree()) return *this;
    jet r(layout::get(num_vars(), degree), 0.0);
    for (int rk = 0; rk < r.size(); ++rk) r.c_[rk] = c_[rk];
    return r;
}

const layout& same_shape(const jet& a, const jet& b) {
    if (a.lay_ != b.lay_) throw error(errc::shape, "jet operands have different shapes");
    return *a.lay_;
}

jet jet::operator-() const {
    jet r = *this;
    kern::active().scale(r.c_.size(), c_.data(), -1.0, r.c_.data());
    return r;
}

jet& jet::operator+=(const jet& o) {
    same_shape(*this, o);
    kern::active().add(c_.size(), c_.data(), o.c_.data(), c_.data());
    return *this;
}

jet& jet::operator-=(const jet& o) {
    same_shape(*this, o);
    kern::active().sub(c_.size(), c_.data(), o.c_.data(), c_.data());
    return *this;
}

jet& jet::operator+=(double s) {
    c_[0] += s;
    return *this;
}

jet& jet::operator-=(double s) {
    c_[0] -= s;
    return *this;
}

jet& jet::operator*=(double s) {
    kern::active().scale(c_.size(), c_.data(), s, c_.data());
    return *this;
}

jet& jet::operator/=(double s) {
    if (s == 0.0) throw error(errc::singularity, "jet divided by zero scalar");
    return *this *= 1.0 / s;
}

jet operator+(const jet& a, const jet& b) {
    const layout& lay = same_shape(a, b);
    jet r(lay, 0.0);
    kern::active().add(r.c_.size(), a.c_.data(), b.c_.data(), r.c_.data());
    return r;
}

jet operator-(const jet& a, const jet& b) {
    const layout& lay = same_shape(a, b);
    jet r(lay, 0.0);
    kern::active().sub(r.c_.size(), a.c_.data(), b.c_.data(), r.c_.data());
    return r;
}

jet operator*(const jet& a, const jet& b) {
    const layout& lay = same_shape(a, b);
    jet r(lay, 0.0);
    kern::active().mul(lay, a.c_.data(), b.c_.data(), r.c_.data());
    return r;
}

jet operator/(const jet& a, const jet& b) { return a * recip(b); }

jet operator/(double s, const jet& a) { return recip(a) * s; }

jet compose_series(const jet& x, const double* c) {
    const int deg = x.degree();
    jet dx = x;
    dx.c_[0] = 0.0;
    jet r = jet::constant(c[deg], x.num_vars(), deg);
    for (int k = deg - 1; k >= 0; --k) {
        r = r * dx;
        r.c_[0] += c[k];
    }
    return r;
}

namespace {

constexpr double kfact[5] = {1.0, 1.0, 2.0, 6.0, 24.0};

jet cyclic_series(const jet& x, double f0, double f1, double f2, double f3) {
    // f0..f3: derivative cycle values at the constant term.
    const double cyc[4] = {f0, f1, f2, f3};
    double c[max_degree + 1];
    for (int k = 0; k <= x.degree(); ++k) c[k] = cyc[k % 4] / kfact[k];
    return compose_series(x, c);
}

} // namespace

jet sin(const jet& x) {
    const double s = std::sin(x.value()), co = std::cos(x.value());
    return cyclic_series(x, s, co, -s, -co);
}

jet cos(const jet& x) {
    const double s = std::sin(x.value()), co = std::cos(x.value());
    return cyclic_series(x, co, -s, -co, s);
}

jet sinh(const jet& x) {
    const double sh = std::sinh(x.value()), ch = std::cosh(x.value());
    return cyclic_series(x, sh, ch, sh, ch);
}

jet cosh(const jet& x) {
    const double sh = std::sinh(x.value()), ch = std::cosh(x.value());
    return cyclic_series(x, ch, sh, ch, sh);
}

jet tanh(const jet& x) {
    // y' = 1 - y^2 gives (k+1) y_{k+1} = -sum_j y_j y_{k-j} for k >= 1.
    double y[max_degree + 1] = {};
    y[0] = std::tanh(x.value());
    if (x.degree() >= 1) y[1] = 1.0 - y[0] * y[0];
    for (int k = 1; k < x.degree(); ++k) {
        double s = 0.0;
        for (int j = 0; j <= k; ++j) s += y[j] * y[k - j];
        y[k + 1] = -s / static_cast<double>(k + 1);
    }
    return compose_series(x, y);
}

jet exp(const jet& x) {
    const double e = std::exp(x.value());
    double c[max_degree + 1];
    for (int k = 0; k <= x.degree(); ++k) c[k] = e / kfact[k];
    return compose_series(x, c);
}

jet log(const jet& x) {
    const double x0 = x.value();
    if (!(x0 > 0.0)) throw error(errc::singularity, "log of non-positive constant term");
    double c[max_degree + 1];
    c[0] = std::log(x0);
    double p = 1.0;
    for (int k = 1; k <= x.degree(); ++k) {
        p /= x0;
        c[k] = ((k % 2) ? p : -p) / static_cast<double>(k);
    }
    return compose_series(x, c);
}

jet sqrt(const jet& x) {
    if (!(x.value() > 0.0)) throw error(errc::singularity, "sqrt of non-positive constant term");
    return pow(x, 0.5);
}

jet asin(const jet& x) {
    const double x0 = x.value();
    if (!(std::abs(x0) < 1.0)) throw error(errc::singularity, "asin outside (-1, 1)");
    const double q = 1.0 - x0 * x0;
    double c[max_degree + 1] = {};
    c[0] = std::asin(x0);
    if (x.degree() >= 1) c[1] = std::pow(q, -0.5);
    if (x.degree() >= 2) c[2] = x0 * std::pow(q, -1.5) / 2.0;
    if (x.degree() >= 3) c[3] = (1.0 + 2.0 * x0 * x0) * std::pow(q, -2.5) / 6.0;
    if (x.degree() >= 4) c[4] = (9.0 * x0 + 6.0 * x0 * x0 * x0) * std::pow(q, -3.5) / 24.0;
    return compose_series(x, c);
}

jet atan(const jet& x) {
    const double x0 = x.value();
    const double p = 1.0 + x0 * x0;
    double c[max_degree + 1] = {};
    c[0] = std::atan(x0);
    if (x.degree() >= 1) c[1] = 1.0 / p;
    if (x.degree() >= 2) c[2] = -x0 / (p * p);
    if (x.degree() >= 3) c[3] = (3.0 * x0 * x0 - 1.0) / (3.0 * p * p * p);
    if (x.degree() >= 4) c[4] = (x0 - x0 * x0 * x0) / (p * p * p * p);
    return compose_series(x, c);
}

jet recip(const jet& x) {
    const double x0 = x.value();
    if (x0 == 0.0) throw error(errc::singularity, "reciprocal of zero constant term");
    double c[max_degree + 1];
    double p = 1.0 / x0;
    for (int k = 0; k <= x.degree(); ++k) {
        c[k] = (k % 2) ? -p : p;
        p /= x0;
    }
    return compose_series(x, c);
}

jet pow_int(const jet& x, long long n) {
    if (n < 0) return recip(pow_int(x, -n));
    jet r = jet::constant(1.0, x.num_vars(), x.degree());
    jet base = x;
    while (n > 0) {
        if (n & 1) r = r * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return r;
}

jet pow(const jet& x, double e) {
    if (e == static_cast<long long>(e) && std::abs(e) < 64.0)
        return pow_int(x, static_cast<long long>(e));
    const double x0 = x.value();
    if (!(x0 > 0.0))
        throw error(errc::singularity, "fractional power of non-positive constant term");
    double c[max_degree + 1];
    double binom = 1.0;
    for (int k = 0; k <= x.degree(); ++k) {
        c[k] = binom * std::pow(x0, e - k) / kfact[k];
        binom *= (e - k);
    }
    return compose_series(x, c);
}

} // namespace wsm::jets
