#include <doctest.h>

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "wsm/errors.hpp"
#include "wsm/expr/expr.hpp"
#include "wsm/jets/jet.hpp"

using wsm::expr::expression;
using wsm::expr::parse;
using wsm::jets::jet;

TEST_CASE("syntax errors carry the byte offset of the failure") {
    try {
        parse("t^");
        FAIL("expected a parse error");
    } catch (const wsm::parse_error& e) {
        CHECK(e.offset() == 2);
        CHECK(std::string(e.what()).find("byte 2") != std::string::npos);
    }
    for (const char* bad : {"sin()", "1 +", "2 ** 3", "(u1", "u1 u2", ")", "foo(2)", ""}) {
        INFO("source ", bad);
        CHECK_THROWS_AS((void)parse(bad), const wsm::parse_error&);
    }
    // Exponents are restricted to small rationals.
    CHECK_THROWS_AS((void)parse("t^(1/4)"), const wsm::parse_error&);
    CHECK_THROWS_AS((void)parse("t^u1"), const wsm::parse_error&);
    CHECK_NOTHROW((void)parse("t^(2/3)"));
}

TEST_CASE("printing then reparsing is a fixed point") {
    const std::vector<std::string> sources = {
        "u1 + u2*u3^2",
        "-sin(u1)^2/(1 + cos(u2))",
        "pi*t - t^(1/2)",
        "cosh(t/2)*tanh(u1 - u2)",
        "exp(-t)*log(1 + u1^2)",
        "sqrt(1 - (u1/2)^3)",
        "arcsin(u1/4) + arctan(u2*u3)",
        "((u1))",
        "2/(3*t)",
        "t^(3/2) - t^3",
        "1 - -u1",
        "sin(cos(sinh(u1)))",
    };
    for (const auto& src : sources) {
        INFO("source ", src);
        const expression e = parse(src);
        const std::string printed = e.str();
        const expression back = parse(printed);
        CHECK(back.str() == printed);
        CHECK(back == e);
    }
}

TEST_CASE("call binds tighter than the power operator") {
    // cosh(u)^2 means (cosh(u))^2.
    const double v = parse("cosh(u)^2").eval_scalar({{"u", 0.7}});
    CHECK(v == doctest::Approx(std::pow(std::cosh(0.7), 2)).epsilon(1e-15));
    CHECK(parse("cosh(u)^2") == parse("(cosh(u))^2"));
}

TEST_CASE("symbolic derivatives agree with central differences") {
    const std::vector<std::string> sources = {
        "sin(t)*exp(t/3)",
        "t^(1/3) + 2*t",
        "cosh(t/2)^2 - sinh(t/2)^2 + t*tanh(t)",
        "log(2 + sin(t))/sqrt(4 + t^2)",
        "arctan(t)*arcsin(t/3)",
    };
    const double h = 1e-5;
    for (const auto& src : sources) {
        const expression f = parse(src);
        const expression df = f.derivative("t");
        for (double t0 : {0.4, 1.1, 2.3}) {
            const double fd = (f.eval_scalar({{"t", t0 + h}}) - f.eval_scalar({{"t", t0 - h}})) /
                              (2.0 * h);
            INFO("source ", src, " at t=", t0);
            CHECK(df.eval_scalar({{"t", t0}}) ==
                  doctest::Approx(fd).epsilon(1e-8));
        }
    }
}

TEST_CASE("cube root evaluates as a jet with the right linear term") {
    const expression f = parse("t^(1/3)");
    std::map<std::string, jet> env{{"t", jet::variable(0, 8.0, 1, 3)}};
    const jet j = f.eval(env);
    CHECK(j.value() == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(j.d1(0) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
}

TEST_CASE("jet evaluation matches scalar evaluation and the cosh warp is its own second derivative") {
    const expression a = parse("cosh(t)");
    const expression app = a.derivative("t").derivative("t");
    for (double t0 : {-0.8, 0.0, 1.6}) {
        CHECK(app.eval_scalar({{"t", t0}}) ==
              doctest::Approx(a.eval_scalar({{"t", t0}})).epsilon(1e-14));
        std::map<std::string, jet> env{{"t", jet::variable(0, t0, 1, 4)}};
        CHECK(a.eval(env).value() == doctest::Approx(a.eval_scalar({{"t", t0}})).epsilon(1e-15));
        // a''/a == 1 identically for the cosh warp.
        CHECK(a.eval(env).d2(0, 0) / a.eval(env).value() == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("variables are reported sorted and unique") {
    const expression e = parse("u2*sin(u1) + u2 - pi*t");
    const auto vars = e.variables();
    REQUIRE(vars.size() == 3);
    CHECK(vars[0] == "t");
    CHECK(vars[1] == "u1");
    CHECK(vars[2] == "u2");
    CHECK(parse("1 + pi").variables().empty());
}

TEST_CASE("evaluation reports missing variables and domain faults") {
    const expression e = parse("sqrt(u1)");
    CHECK_THROWS_AS((void)e.eval_scalar({}), const wsm::error&);
    CHECK_THROWS_AS((void)e.eval_scalar({{"u1", -1.0}}), const wsm::error&);
}
