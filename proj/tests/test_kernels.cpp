#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "wsm/jets/jet.hpp"
#include "wsm/jets/kernels.hpp"

using wsm::jets::jet;
namespace kern = wsm::jets::kern;

namespace {

jet random_jet(std::mt19937_64& rng, int num_vars, int degree) {
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    jet j = jet::constant(0.0, num_vars, degree);
    for (double& c : j.coeffs())
        c = coeff(rng);
    return j;
}

// Exercise the full backend surface (mul, add, sub, scale) through the jet
// operators and a division (which runs the series composition path).
std::vector<jet> workload(unsigned long long seed, int num_vars, int degree) {
    std::mt19937_64 rng(seed);
    const jet a = random_jet(rng, num_vars, degree);
    const jet b = random_jet(rng, num_vars, degree);
    jet c = random_jet(rng, num_vars, degree);
    c.coeffs()[0] = 1.5; // keep the divisor regular
    return {a * b, a + b, a - b, a * 3.25, a / c, wsm::jets::exp(a * 0.1)};
}

} // namespace

TEST_CASE("an active kernel backend is always selected") {
    CHECK(kern::active().name != nullptr);
    CHECK(kern::scalar_backend().name == std::string("scalar"));
    CHECK_FALSE(kern::select("not-a-backend"));
}

TEST_CASE("vector backends reproduce the scalar results bit for bit") {
    const std::string original = kern::active().name;

    for (const char* candidate : {"avx2", "neon"}) {
        REQUIRE(kern::select("scalar"));
        if (!kern::select(candidate))
            continue; // not built or not supported on this machine
        INFO("backend ", candidate);

        for (auto [nv, deg] : {std::pair{1, 4}, {2, 4}, {3, 3}, {4, 2}, {6, 4}}) {
            for (unsigned long long seed = 1; seed <= 5; ++seed) {
                REQUIRE(kern::select("scalar"));
                const auto expect = workload(seed, nv, deg);
                REQUIRE(kern::select(candidate));
                const auto got = workload(seed, nv, deg);
                REQUIRE(expect.size() == got.size());
                for (std::size_t i = 0; i < expect.size(); ++i)
                    CHECK(expect[i] == got[i]); // exact coefficient equality
            }
        }
    }

    REQUIRE(kern::select(original.c_str()));
}
