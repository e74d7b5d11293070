#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "wsm/ambient/ambient.hpp"
#include "wsm/catalog/catalog.hpp"
#include "wsm/errors.hpp"
#include "wsm/extrinsic/extrinsic.hpp"
#include "wsm/linalg/small.hpp"

namespace ambient = wsm::ambient;
namespace extrinsic = wsm::extrinsic;
using extrinsic::immersion;
using wsm::jets::jet;

namespace {

const double inf = std::numeric_limits<double>::infinity();

immersion make_imm(std::vector<std::string> params,
                   std::vector<std::pair<double, double>> region, const std::string& t,
                   std::vector<std::string> fiber, bool quadric = false) {
    immersion imm;
    imm.params = std::move(params);
    imm.sample_region = std::move(region);
    imm.t_component = wsm::expr::parse(t);
    for (const auto& f : fiber)
        imm.fiber.push_back(wsm::expr::parse(f));
    imm.hyperquadric_stage = quadric;
    return imm;
}

// Induced metric values at u, computed independently of the frame pipeline:
// pull the ambient metric back through degree-1 parameter jets.
wsm::linalg::matrix<double> induced_metric(const ambient::config& amb, const immersion& imm,
                                           const std::vector<double>& u) {
    REQUIRE_FALSE(imm.hyperquadric_stage);
    const int n = static_cast<int>(imm.params.size());
    std::map<std::string, jet> env;
    for (int i = 0; i < n; ++i)
        env[imm.params[static_cast<std::size_t>(i)]] =
            jet::variable(i, u[static_cast<std::size_t>(i)], n, 1);
    const jet t = imm.t_component.eval(env);
    std::vector<jet> x;
    for (const auto& f : imm.fiber)
        x.push_back(f.eval(env));
    const auto G = ambient::metric(amb, t, x);
    std::vector<jet> F;
    F.push_back(t);
    for (const auto& xi : x)
        F.push_back(xi);
    wsm::linalg::matrix<double> g(n, n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int A = 0; A < amb.dim(); ++A)
                for (int B = 0; B < amb.dim(); ++B)
                    s += G(A, B).value() * F[static_cast<std::size_t>(A)].d1(i) *
                         F[static_cast<std::size_t>(B)].d1(j);
            g(i, j) = s;
        }
    return g;
}

} // namespace

TEST_CASE("umbilic slices have shape operator (a'/a) I") {
    const auto& e = wsm::catalog::find("slice");
    const auto g = extrinsic::compute(e.amb, e.imm, {0.2, -0.1, 0.3});
    REQUIRE(g.codim == 1);
    const double ratio = std::tanh(0.5); // a'/a for cosh at t = 0.5
    CHECK(g.mean_norm == doctest::Approx(ratio).epsilon(1e-12));
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            CHECK(std::abs(std::abs(g.shape[0](i, j)) - (i == j ? ratio : 0.0)) < 1e-12);
    CHECK(g.t_norm2 == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(g.nabla_alpha_norm2 == doctest::Approx(0.0).epsilon(1e-20));
    CHECK(g.laplace_alpha_norm2 == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("the quadratic sphere embedding is minimal with |alpha|^2 = 4/3") {
    const auto& e = wsm::catalog::find("veronese_RxS4");
    const auto g = extrinsic::compute(e.amb, e.imm, {0.8, 0.7});
    CHECK(g.n == 2);
    CHECK(g.codim == 3);
    CHECK(g.mean_norm < 1e-12);
    CHECK(g.alpha_norm2 == doctest::Approx(4.0 / 3.0).epsilon(1e-10));
    CHECK(g.nabla_alpha_norm2 < 1e-16); // parallel second fundamental form
    CHECK(g.sign_definite);
    CHECK(g.sigma_common == 1.0);
}

TEST_CASE("the anti-de Sitter product surface has |alpha|^2 = 2") {
    const auto& e = wsm::catalog::find("adS_product");
    const auto g = extrinsic::compute(e.amb, e.imm, {0.15, -0.2});
    CHECK(g.codim == 1);
    CHECK(g.sigma[0] == -1.0);
    CHECK(g.mean_norm < 1e-11);
    CHECK(g.alpha_norm2 == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(g.nabla_alpha_norm2 < 1e-14);
}

TEST_CASE("the expanding-slice example is umbilic with |alpha|^2 = 1/3") {
    const auto& e = wsm::catalog::find("einstein_de_sitter_slice");
    const auto g = extrinsic::compute(e.amb, e.imm, {0.3, -0.4, 0.1});
    CHECK(g.alpha_norm2 == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(g.mean_norm == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(std::abs(g.laplace_alpha_norm2) < 1e-10);
    CHECK(g.big_b == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
    CHECK(g.b == doctest::Approx(-1.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("second fundamental form components are symmetric") {
    for (const char* name : {"graph", "veronese_RxS4", "hyperbolic_veronese_cylinder"}) {
        const auto& e = wsm::catalog::find(name);
        std::vector<double> u;
        for (const auto& [lo, hi] : e.imm.sample_region)
            u.push_back(0.5 * (lo + hi));
        const auto g = extrinsic::compute(e.amb, e.imm, u);
        for (int b = 0; b < g.codim; ++b)
            for (int i = 0; i < g.n; ++i)
                for (int j = 0; j < g.n; ++j)
                    CHECK(std::abs(g.shape[static_cast<std::size_t>(b)](i, j) -
                                   g.shape[static_cast<std::size_t>(b)](j, i)) < 1e-13);
    }
}

TEST_CASE("frame-invariant scalars survive parameter reordering and rotation") {
    const auto& e = wsm::catalog::find("graph");

    // Same graph with the parameters listed in the opposite order.
    immersion swapped = make_imm({"u2", "u1"}, {{-0.7, 0.7}, {-0.7, 0.7}},
                                 "1 + 0.1*sin(u1)*cos(u2)", {"u1", "u2"});
    // And rotated parameters: u1 = (v1+v2)/sqrt(2), u2 = (v1-v2)/sqrt(2).
    const std::string s2 = "1.4142135623730951";
    immersion rotated = make_imm(
        {"v1", "v2"}, {{-0.4, 0.4}, {-0.4, 0.4}},
        "1 + 0.1*sin((v1 + v2)/" + s2 + ")*cos((v1 - v2)/" + s2 + ")",
        {"(v1 + v2)/" + s2, "(v1 - v2)/" + s2});

    const double u1 = 0.31, u2 = -0.22;
    const auto ga = extrinsic::compute(e.amb, e.imm, {u1, u2});
    const auto gb = extrinsic::compute(e.amb, swapped, {u2, u1});
    const auto gc = extrinsic::compute(e.amb, rotated,
                                       {(u1 + u2) / std::sqrt(2.0), (u1 - u2) / std::sqrt(2.0)});

    for (const auto* g : {&gb, &gc}) {
        CHECK(g->alpha_norm2 == doctest::Approx(ga.alpha_norm2).epsilon(1e-10));
        CHECK(g->mean_norm == doctest::Approx(ga.mean_norm).epsilon(1e-10));
        CHECK(g->nabla_alpha_norm2 == doctest::Approx(ga.nabla_alpha_norm2).epsilon(1e-9));
        CHECK(g->laplace_alpha_norm2 == doctest::Approx(ga.laplace_alpha_norm2).epsilon(1e-8));
        CHECK(g->t_norm2 == doctest::Approx(ga.t_norm2).epsilon(1e-11));
        CHECK(g->xi_norm2 == doctest::Approx(ga.xi_norm2).epsilon(1e-11));
        CHECK(g->b == doctest::Approx(ga.b).epsilon(1e-12));
        CHECK(g->big_b == doctest::Approx(ga.big_b).epsilon(1e-12));
    }
}

TEST_CASE("the reported Laplacian matches a divergence-form finite difference") {
    const auto& e = wsm::catalog::find("graph");
    const std::vector<double> u0 = {0.24, -0.31};
    const double h = 2e-3;
    const int n = 2;

    const auto f = [&](const std::vector<double>& u) {
        return extrinsic::compute(e.amb, e.imm, u).alpha_norm2;
    };
    const auto shift = [&](const std::vector<double>& u, int d, double dh) {
        auto v = u;
        v[static_cast<std::size_t>(d)] += dh;
        return v;
    };
    // P_i(u) = sqrt(det g) g^{ij} d_j f, with the inner derivative by central
    // differences; then Laplacian = (1/sqrt(det g)) d_i P_i.
    const auto P = [&](const std::vector<double>& u, int i) {
        const auto g = induced_metric(e.amb, e.imm, u);
        const double det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
        const double inv[2][2] = {{g(1, 1) / det, -g(0, 1) / det},
                                  {-g(1, 0) / det, g(0, 0) / det}};
        double s = 0.0;
        for (int j = 0; j < n; ++j)
            s += inv[i][j] * (f(shift(u, j, h)) - f(shift(u, j, -h))) / (2.0 * h);
        return std::sqrt(det) * s;
    };

    const auto g0 = induced_metric(e.amb, e.imm, u0);
    const double det0 = g0(0, 0) * g0(1, 1) - g0(0, 1) * g0(1, 0);
    double lap = 0.0;
    for (int i = 0; i < n; ++i)
        lap += (P(shift(u0, i, h), i) - P(shift(u0, i, -h), i)) / (2.0 * h);
    lap /= std::sqrt(det0);

    const auto g = extrinsic::compute(e.amb, e.imm, u0);
    CHECK(g.laplace_alpha_norm2 == doctest::Approx(lap).epsilon(5e-4));
}

TEST_CASE("cylinder lifts keep alpha and scale the mean curvature by n/(n+1)") {
    // Geodesic 2-sphere of radius 0.6 inside the S^3 fiber of a product.
    const auto amb = ambient::make_config(1, "1", -inf, inf, 3, 1, 0);
    const std::string r = "0.6";
    immersion base = make_imm(
        {"u1", "u2"}, {{0.3, 1.2}, {0.3, 1.2}}, "0.4",
        {"cos(" + r + ")", "sin(" + r + ")*cos(u1)", "sin(" + r + ")*sin(u1)*cos(u2)",
         "sin(" + r + ")*sin(u1)*sin(u2)"},
        true);
    const immersion lifted = extrinsic::cylinder_lift(base, -1.0, 1.0);
    REQUIRE(lifted.params.size() == 3);
    CHECK(lifted.params[0] == "s");

    const std::vector<double> u = {0.8, 0.65};
    const auto gf = extrinsic::compute(amb, base, u);
    const auto gF = extrinsic::compute(amb, lifted, {-0.35, u[0], u[1]});

    // Base: 2-sphere in S^3 at constant t -> normals are d_t (index 0, with
    // vanishing shape) and the sphere normal; lift consumes d_t as a tangent.
    REQUIRE(gf.codim == 2);
    REQUIRE(gF.codim == 1);
    const double cot = std::cos(0.6) / std::sin(0.6);
    CHECK(gf.mean_norm == doctest::Approx(cot).epsilon(1e-10));
    CHECK(gF.mean_norm == doctest::Approx(2.0 / 3.0 * cot).epsilon(1e-10));
    CHECK(gF.alpha_norm2 == doctest::Approx(gf.alpha_norm2).epsilon(1e-11));
    CHECK(gF.t_norm2 == doctest::Approx(1.0).epsilon(1e-12));

    // alpha_F(T, -) = 0: the axis direction is the leading frame vector.
    for (int j = 0; j < gF.n; ++j)
        CHECK(std::abs(gF.shape[0](0, j)) < 1e-12);
    // The lifted shape operator restricted to the fiber directions matches
    // the base one (frames are built by the same pivoting order).
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(std::abs(std::abs(gF.shape[0](i + 1, j + 1)) -
                           std::abs(gf.shape[1](i, j))) < 1e-10);
}

TEST_CASE("the built-in lifted entry agrees with its base") {
    const auto& e = wsm::catalog::find("hyperbolic_veronese_cylinder");
    REQUIRE(e.lifted);
    const std::vector<double> u = {0.7, 0.6};
    const auto gf = extrinsic::compute(e.amb, e.base, u);
    const auto gF = extrinsic::compute(e.amb, e.imm, {0.25, u[0], u[1]});
    CHECK(gF.alpha_norm2 == doctest::Approx(gf.alpha_norm2).epsilon(1e-11));
    CHECK(gf.alpha_norm2 == doctest::Approx(4.0 / 3.0).epsilon(1e-10));
    CHECK(gF.mean_norm < 1e-11);
    CHECK(gf.mean_norm < 1e-11);
    CHECK(gF.t_norm2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("construction errors are reported by kind") {
    const auto amb = ambient::make_config(1, "1", -inf, inf, 3, 1, 0);

    immersion dup = make_imm({"u", "u"}, {{0, 1}, {0, 1}}, "0", {"u", "0.1", "0.2"});
    CHECK_THROWS_AS((void)extrinsic::compute(amb, dup, {0.5, 0.5}), const wsm::error&);

    immersion short_fiber = make_imm({"u"}, {{0, 1}}, "0", {"u", "0.1"});
    try {
        (void)extrinsic::compute(amb, short_fiber, {0.5});
        FAIL("expected a config error");
    } catch (const wsm::error& e) {
        CHECK(e.kind() == wsm::errc::config);
    }

    // t leaves the open interval of the expanding model.
    const auto eds = ambient::make_config(-1, "t^(1/3)", 0, inf, 3, 0, 0);
    immersion bad_t = make_imm({"u1"}, {{-0.1, 0.1}}, "0", {"u1", "0", "0"});
    try {
        (void)extrinsic::compute(eds, bad_t, {0.05});
        FAIL("expected a chart error");
    } catch (const wsm::error& e) {
        CHECK(e.kind() == wsm::errc::chart_domain);
    }

    // A curve along a timelike fiber direction is not spacelike.
    const auto mixed = ambient::make_config(1, "1", -inf, inf, 4, -1, 2);
    immersion timelike = make_imm({"u1"}, {{-0.2, 0.2}}, "0", {"0.1", "0.2", "u1", "0.3"});
    try {
        (void)extrinsic::compute(mixed, timelike, {0.05});
        FAIL("expected a spacelike violation");
    } catch (const wsm::error& e) {
        CHECK(e.kind() == wsm::errc::spacelike_violation);
    }

    // Hyperquadric staging needs a curved fiber.
    const auto flatfiber = ambient::make_config(1, "1", -inf, inf, 3, 0, 0);
    immersion quad = make_imm({"u"}, {{0, 1}}, "0", {"1", "u", "0", "0"}, true);
    CHECK_THROWS_AS((void)extrinsic::compute(flatfiber, quad, {0.5}), const wsm::error&);

    // Lift preconditions: t must be constant and "s" must be free.
    immersion tvar = make_imm({"u"}, {{0, 1}}, "u", {"u", "0", "0"});
    CHECK_THROWS_AS((void)extrinsic::cylinder_lift(tvar, 0, 1), const wsm::error&);
    immersion named_s = make_imm({"s"}, {{0, 1}}, "0", {"s", "0", "0"});
    CHECK_THROWS_AS((void)extrinsic::cylinder_lift(named_s, 0, 1), const wsm::error&);
}

TEST_CASE("the independent induced metric agrees with frame orthonormality") {
    // Cross-check: the pullback metric of the graph has the same determinant
    // as the Gram matrix of the orthonormal frame expansion (frames are
    // g-orthonormal, so det g = (det of the coefficient change)^-2; instead
    // we verify g itself is reproduced by the frame inner products).
    const auto& e = wsm::catalog::find("graph");
    const std::vector<double> u = {0.1, 0.42};
    const auto g = extrinsic::compute(e.amb, e.imm, u);
    CHECK(g.frame_orth_err < 1e-12);
    CHECK(g.dt_decomp_err < 1e-12);
    const auto gm = induced_metric(e.amb, e.imm, u);
    // The slice of the metric in the tau direction: |T|^2 from the pullback
    // must match eps - <xi,xi>.
    CHECK(g.t_norm2 + g.xi_norm2 == doctest::Approx(e.amb.eps).epsilon(1e-12));
    CHECK(gm(0, 1) == doctest::Approx(gm(1, 0)).epsilon(1e-14));
}
