#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "wsm/ambient/ambient.hpp"
#include "wsm/ambient/hyperquadric.hpp"
#include "wsm/errors.hpp"
#include "wsm/jets/jet.hpp"

namespace ambient = wsm::ambient;
using wsm::jets::jet;

namespace {
const double inf = std::numeric_limits<double>::infinity();
}

TEST_CASE("chart -> hyperquadric -> chart round trips") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> xd(-0.45, 0.45);
    for (const auto& amb : {ambient::make_config(1, "1", -inf, inf, 4, 1, 0),
                            ambient::make_config(1, "1", -inf, inf, 4, -1, 2),
                            ambient::make_config(-1, "cos(t)", -1.5, 1.5, 2, -1, 0),
                            ambient::make_config(1, "1", -inf, inf, 3, 2.5, 1)}) {
        for (int rep = 0; rep < 8; ++rep) {
            std::vector<double> x;
            for (int i = 0; i < amb.fiber_dim; ++i)
                x.push_back(xd(rng));
            const auto y = ambient::from_chart(amb, x);
            REQUIRE(static_cast<int>(y.size()) == amb.fiber_dim + 1);
            CHECK(std::abs(ambient::quadric_residual(amb, y)) < 1e-12);
            const auto back = ambient::to_chart(amb, y);
            for (int i = 0; i < amb.fiber_dim; ++i)
                CHECK(back[static_cast<std::size_t>(i)] ==
                      doctest::Approx(x[static_cast<std::size_t>(i)]).epsilon(1e-12));
        }
    }
}

TEST_CASE("known sphere points land where they should") {
    // c = 1: the unit-sphere model, pole first. Chart origin maps to the pole.
    const auto amb = ambient::make_config(1, "1", -inf, inf, 4, 1, 0);
    const auto y0 = ambient::from_chart(amb, std::vector<double>{0, 0, 0, 0});
    CHECK(y0[0] == doctest::Approx(1.0).epsilon(1e-15));
    for (int i = 1; i <= 4; ++i)
        CHECK(y0[static_cast<std::size_t>(i)] == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("the antipode of the pole is outside the chart") {
    const auto amb = ambient::make_config(1, "1", -inf, inf, 3, 1, 0);
    std::vector<double> antipode = {-1.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS((void)ambient::to_chart(amb, antipode), const wsm::error&);
    CHECK_THROWS_AS((void)ambient::from_chart(ambient::make_config(1, "1", -inf, inf, 3, 0, 0),
                                              std::vector<double>{0.1, 0.2, 0.3}),
                    const wsm::error&);
}

TEST_CASE("the chart transfer pulls the flat quadric metric back to phi^2 eta") {
    // Seed the chart coordinates as jet variables, push through from_chart,
    // and compare sum_sigma dy_A dy_A against the conformal metric as jets.
    for (const auto& amb : {ambient::make_config(1, "1", -inf, inf, 3, 1, 0),
                            ambient::make_config(1, "1", -inf, inf, 4, -1, 2)}) {
        const int N = amb.fiber_dim;
        std::vector<jet> x;
        const std::vector<double> p = {0.2, -0.3, 0.15, 0.05};
        for (int i = 0; i < N; ++i)
            x.push_back(jet::variable(i, p[static_cast<std::size_t>(i)], N, 2));
        const auto y = ambient::from_chart(amb, x);
        const double s0 = amb.c > 0 ? 1.0 : -1.0;

        const jet phi = ambient::conformal_factor(amb, x);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                jet pulled = s0 * (y[0].partial(i) * y[0].partial(j));
                for (int k = 0; k < N; ++k)
                    pulled = pulled + amb.eta(k) * (y[static_cast<std::size_t>(k + 1)].partial(i) *
                                                    y[static_cast<std::size_t>(k + 1)].partial(j));
                const jet expected = (phi * phi).truncated(1) *
                                     jet::constant(i == j ? amb.eta(i) : 0.0, N, 1);
                double worst = 0.0;
                for (std::size_t r = 0; r < pulled.coeffs().size(); ++r)
                    worst = std::max(worst,
                                     std::abs(pulled.coeffs()[r] - expected.coeffs()[r]));
                INFO("component ", i, j);
                CHECK(worst < 1e-13);
            }
    }
}
