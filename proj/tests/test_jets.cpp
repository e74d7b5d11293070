#include <doctest.h>

#include <cmath>
#include <random>

#include "wsm/errors.hpp"
#include "wsm/jets/jet.hpp"

using wsm::jets::jet;
using wsm::jets::mono;

namespace {

mono exps(std::initializer_list<int> e) {
    mono m{};
    int i = 0;
    for (int v : e)
        m[static_cast<std::size_t>(i++)] = static_cast<std::uint8_t>(v);
    return m;
}

double max_coeff_diff(const jet& a, const jet& b) {
    REQUIRE(a.num_vars() == b.num_vars());
    REQUIRE(a.degree() == b.degree());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        worst = std::max(worst, std::abs(a.coeffs()[i] - b.coeffs()[i]));
    return worst;
}

} // namespace

TEST_CASE("seed jets have the advertised shape") {
    const jet c = jet::constant(2.5, 3, 4);
    CHECK(c.value() == 2.5);
    CHECK(c.num_vars() == 3);
    CHECK(c.degree() == 4);
    CHECK(c.d1(0) == 0.0);

    const jet u = jet::variable(1, -0.75, 3, 4);
    CHECK(u.value() == -0.75);
    CHECK(u.d1(1) == 1.0);
    CHECK(u.d1(0) == 0.0);
    CHECK(u.d2(1, 1) == 0.0);
}

TEST_CASE("polynomial arithmetic stores plain monomial coefficients") {
    // f = u0^2 u1 + 3 u1: coeff((2,1)) = 1, mixed derivative d^2_0 d_1 f = 2.
    const jet u0 = jet::variable(0, 0.0, 2, 4);
    const jet u1 = jet::variable(1, 0.0, 2, 4);
    const jet f = u0 * u0 * u1 + 3.0 * u1;
    CHECK(f.coeff(exps({2, 1})) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f.deriv(exps({2, 1})) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(f.d1(1) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(f.coeff(exps({0, 1})) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("mixed partials of composed elementary functions match closed forms") {
    // f(u,v) = sin(u) exp(v) at (0.3, -0.2); all partials equal sin/cos ladders.
    const double su = std::sin(0.3), cu = std::cos(0.3), ev = std::exp(-0.2);
    const jet u = jet::variable(0, 0.3, 2, 4);
    const jet v = jet::variable(1, -0.2, 2, 4);
    const jet f = wsm::jets::sin(u) * wsm::jets::exp(v);
    CHECK(f.value() == doctest::Approx(su * ev).epsilon(1e-14));
    CHECK(f.d1(0) == doctest::Approx(cu * ev).epsilon(1e-14));
    CHECK(f.d1(1) == doctest::Approx(su * ev).epsilon(1e-14));
    CHECK(f.d2(0, 1) == doctest::Approx(cu * ev).epsilon(1e-14));
    CHECK(f.d2(0, 0) == doctest::Approx(-su * ev).epsilon(1e-14));
    CHECK(f.deriv(exps({2, 2})) == doctest::Approx(-su * ev).epsilon(1e-13));
    CHECK(f.deriv(exps({3, 1})) == doctest::Approx(-cu * ev).epsilon(1e-13));
}

TEST_CASE("pythagorean and hyperbolic identities hold coefficientwise") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> pt(-0.8, 0.8);
    for (int rep = 0; rep < 10; ++rep) {
        const jet x = jet::variable(rep % 3, pt(rng), 3, 4);
        const jet one = jet::constant(1.0, 3, 4);
        const jet s = wsm::jets::sin(x), c = wsm::jets::cos(x);
        CHECK(max_coeff_diff(s * s + c * c, one) < 1e-14);
        const jet sh = wsm::jets::sinh(x), ch = wsm::jets::cosh(x);
        CHECK(max_coeff_diff(ch * ch - sh * sh, one) < 1e-13);
        CHECK(max_coeff_diff(wsm::jets::tanh(x), sh / ch) < 1e-14);
    }
}

TEST_CASE("exp/log/sqrt/recip/pow are mutually consistent") {
    const jet x = jet::variable(0, 1.7, 2, 4) + 0.4 * jet::variable(1, 0.0, 2, 4);
    CHECK(max_coeff_diff(wsm::jets::exp(wsm::jets::log(x)), x) < 1e-14);
    const jet r = wsm::jets::sqrt(x);
    CHECK(max_coeff_diff(r * r, x) < 1e-14);
    CHECK(max_coeff_diff(wsm::jets::recip(x) * x, jet::constant(1.0, 2, 4)) < 1e-14);
    CHECK(max_coeff_diff(wsm::jets::pow(x, 0.5), r) < 1e-14);
    CHECK(max_coeff_diff(wsm::jets::pow_int(x, 3), x * x * x) < 1e-13);
    CHECK(max_coeff_diff(wsm::jets::pow(x, -2.0),
                         wsm::jets::recip(x * x)) < 1e-13);
}

TEST_CASE("inverse trigonometric derivatives match their algebraic forms") {
    const jet x = jet::variable(0, 0.35, 1, 4);
    const jet one = jet::constant(1.0, 1, 3);
    // d/dx asin = 1/sqrt(1-x^2), d/dx atan = 1/(1+x^2); compare as degree-3 jets.
    const jet das = wsm::jets::asin(x).partial(0);
    const jet dat = wsm::jets::atan(x).partial(0);
    const jet x3 = x.truncated(3);
    CHECK(max_coeff_diff(das, one / wsm::jets::sqrt(one - x3 * x3)) < 1e-13);
    CHECK(max_coeff_diff(dat, one / (one + x3 * x3)) < 1e-13);
}

TEST_CASE("partial drops the degree and differentiates") {
    const jet x = jet::variable(0, 0.6, 2, 4);
    const jet y = jet::variable(1, -0.3, 2, 4);
    const jet f = wsm::jets::sin(x * y);
    const jet fx = f.partial(0);
    CHECK(fx.degree() == 3);
    CHECK(fx.value() == doctest::Approx(f.d1(0)).epsilon(1e-15));
    CHECK(fx.d1(1) == doctest::Approx(f.d2(0, 1)).epsilon(1e-14));
    // y cos(xy) as an independent construction of the same derivative.
    const jet alt = y.truncated(3) * wsm::jets::cos(x.truncated(3) * y.truncated(3));
    CHECK(max_coeff_diff(fx, alt) < 1e-14);
}

TEST_CASE("truncation keeps the low-order coefficients exactly") {
    const jet x = jet::variable(0, 0.9, 3, 4);
    const jet z = jet::variable(2, 0.2, 3, 4);
    const jet f = wsm::jets::exp(x) * wsm::jets::cos(z);
    const jet t2 = f.truncated(2);
    CHECK(t2.degree() == 2);
    CHECK(t2.value() == f.value());
    CHECK(t2.d1(0) == f.d1(0));
    CHECK(t2.d2(0, 2) == f.d2(0, 2));
    CHECK(t2.coeff(exps({1, 0, 1})) == f.coeff(exps({1, 0, 1})));
}

TEST_CASE("shape mismatches are rejected, not coerced") {
    const jet a = jet::variable(0, 1.0, 2, 4);
    const jet b = jet::variable(0, 1.0, 2, 3);
    const jet c = jet::variable(0, 1.0, 3, 4);
    CHECK_THROWS_AS((void)(a + b), const wsm::error&);
    CHECK_THROWS_AS((void)(a * c), const wsm::error&);
    try {
        (void)(a - b);
        FAIL("expected a shape error");
    } catch (const wsm::error& e) {
        CHECK(e.kind() == wsm::errc::shape);
    }
}

TEST_CASE("singular operations throw singularity errors") {
    const jet zero = jet::constant(0.0, 1, 3);
    const jet neg = jet::constant(-2.0, 1, 3);
    CHECK_THROWS_AS((void)wsm::jets::recip(zero), const wsm::error&);
    CHECK_THROWS_AS((void)wsm::jets::log(neg), const wsm::error&);
    CHECK_THROWS_AS((void)wsm::jets::sqrt(neg), const wsm::error&);
    CHECK_THROWS_AS((void)wsm::jets::pow(neg, 0.5), const wsm::error&);
    // Integral exponents are fine on negative bases.
    CHECK(wsm::jets::pow(neg, 3.0).value() == doctest::Approx(-8.0));
}

TEST_CASE("six-variable degree-4 jets differentiate a full chain") {
    // f = sqrt(1 + sum u_i^2) at a generic point; check one gradient and one
    // curvature entry against the closed form.
    std::vector<jet> u;
    std::vector<double> p = {0.1, -0.2, 0.3, 0.15, -0.25, 0.05};
    jet s = jet::constant(1.0, 6, 4);
    for (int i = 0; i < 6; ++i) {
        u.push_back(jet::variable(i, p[static_cast<std::size_t>(i)], 6, 4));
        s = s + u.back() * u.back();
    }
    const jet f = wsm::jets::sqrt(s);
    const double fv = f.value();
    for (int i = 0; i < 6; ++i)
        CHECK(f.d1(i) == doctest::Approx(p[static_cast<std::size_t>(i)] / fv).epsilon(1e-13));
    const double expected = -p[0] * p[1] / (fv * fv * fv);
    CHECK(f.d2(0, 1) == doctest::Approx(expected).epsilon(1e-13));
}
