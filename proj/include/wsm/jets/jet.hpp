#pragma once

/** \file
 *  \brief Truncated multivariate Taylor value (degree <= 4, up to 6 variables).
 *
 *  Coefficients are plain monomial coefficients (not divided by factorials),
 *  stored dense in the graded-lex rank order of jets::layout. Truncation is
 *  silent and exact: arithmetic never consults discarded orders. Mixed
 *  partials are recovered on extraction by multiplying with the multinomial
 *  factorial of the exponent tuple.
 */

#include <vector>

#include "wsm/errors.hpp"
#include "wsm/jets/layout.hpp"

namespace wsm::jets {

class jet {
public:
    jet() = default;

    /// Constant jet with the given shape.
    static jet constant(double value, int num_vars, int degree);

    /// Seed jet for coordinate `var` (0-based): value + 1*u_var.
    static jet variable(int var, double value, int num_vars, int degree);

    bool empty() const noexcept { return lay_ == nullptr; }
    int num_vars() const noexcept { return lay_->num_vars; }
    int degree() const noexcept { return lay_->degree; }
    int size() const noexcept { return lay_->size(); }
    const layout& shape() const noexcept { return *lay_; }

    double value() const noexcept { return c_[0]; }
    const std::vector<double>& coeffs() const noexcept { return c_; }
    std::vector<double>& coeffs() noexcept { return c_; }

    /// Plain monomial coefficient; zero-filled exponent tuple.
    double coeff(const mono& m) const;
    void set_coeff(const mono& m, double v);

    /// Mixed partial derivative at the expansion point: coeff times the
    /// factorial product of the exponent tuple.
    double deriv(const mono& m) const;
    /// First partial by variable index.
    double d1(int i) const;
    /// Second partial by variable indices (i and j may coincide).
    double d2(int i, int j) const;

    /// Derivative with respect to variable i; degree drops by one.
    jet partial(int i) const;

    /// Copy truncated to a lower (or equal) degree. Ranks of retained
    /// monomials coincide, so this is a prefix copy and bit-exact.
    jet truncated(int degree) const;

    jet operator-() const;
    jet& operator+=(const jet& o);
    jet& operator-=(const jet& o);
    jet& operator+=(double s);
    jet& operator-=(double s);
    jet& operator*=(double s);
    jet& operator/=(double s);

    friend jet operator+(const jet& a, const jet& b);
    friend jet operator-(const jet& a, const jet& b);
    friend jet operator*(const jet& a, const jet& b);
    friend jet operator/(const jet& a, const jet& b);
    friend jet operator+(const jet& a, double s) { jet r = a; r += s; return r; }
    friend jet operator+(double s, const jet& a) { jet r = a; r += s; return r; }
    friend jet operator-(const jet& a, double s) { jet r = a; r -= s; return r; }
    friend jet operator-(double s, const jet& a) { jet r = -a; r += s; return r; }
    friend jet operator*(const jet& a, double s) { jet r = a; r *= s; return r; }
    friend jet operator*(double s, const jet& a) { jet r = a; r *= s; return r; }
    friend jet operator/(const jet& a, double s) { jet r = a; r /= s; return r; }
    friend jet operator/(double s, const jet& a);

    friend bool operator==(const jet& a, const jet& b) {
        return a.lay_ == b.lay_ && a.c_ == b.c_;
    }

private:
    jet(const layout& lay, double fill) : lay_(&lay), c_(lay.size(), fill) {}

    const layout* lay_ = nullptr;
    std::vector<double> c_;

    friend const layout& same_shape(const jet& a, const jet& b);
    friend jet compose_series(const jet& x, const double* c);
};

/// Shared shape of two operands; shape error if they disagree.
const layout& same_shape(const jet& a, const jet& b);

/// f(x) for univariate series coefficients c[0..degree] of f around x.value().
jet compose_series(const jet& x, const double* c);

jet sin(const jet& x);
jet cos(const jet& x);
jet sinh(const jet& x);
jet cosh(const jet& x);
jet tanh(const jet& x);
jet exp(const jet& x);
jet log(const jet& x);
jet sqrt(const jet& x);
jet asin(const jet& x);
jet atan(const jet& x);

/// Reciprocal; singularity error when the constant term is zero.
jet recip(const jet& x);

/// Integer power by repeated squaring; negative exponents go through recip.
jet pow_int(const jet& x, long long n);

/// Real-exponent power. Integral exponents delegate to pow_int (any base);
/// fractional exponents require a positive constant term.
jet pow(const jet& x, double e);

} // namespace wsm::jets
