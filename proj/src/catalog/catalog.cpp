#include "wsm/catalog/catalog.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "wsm/errors.hpp"
#include "wsm/expr/expr.hpp"

namespace wsm::catalog {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kPi = std::acos(-1.0);

extrinsic::immersion make_imm(std::vector<std::string> params,
                              std::vector<std::pair<double, double>> region, const std::string& t,
                              std::vector<std::string> fiber, bool hyperquadric) {
    extrinsic::immersion imm;
    imm.params = std::move(params);
    imm.sample_region = std::move(region);
    imm.t_component = expr::parse(t);
    imm.fiber.reserve(fiber.size());
    for (const auto& f : fiber) imm.fiber.push_back(expr::parse(f));
    imm.hyperquadric_stage = hyperquadric;
    return imm;
}

std::vector<entry> build() {
    std::vector<entry> v;

    {
        entry e;
        e.name = "adS_product";
        e.summary = "product of two hyperbolas as a spacelike surface of the cos-warped "
                    "hyperbolic-plane model";
        e.amb = ambient::make_config(-1.0, "cos(t)", -kPi / 2, kPi / 2, 2, -1.0, 0);
        const std::string den = "(sqrt(2)*sqrt(1 - cosh(u1)^2/2))";
        e.imm = make_imm({"u1", "u2"}, {{-0.3, 0.3}, {-0.3, 0.3}}, "arcsin(cosh(u1)/sqrt(2))",
                         {"cosh(u2)/" + den, "sinh(u1)/" + den, "sinh(u2)/" + den}, true);
        e.expected = {{"alpha_norm2", 2.0}, {"mean_curvature", 0.0}, {"psi_fit", 0.0},
                      {"psi_star", -1.0},   {"kappa", -1.0},         {"big_b", 0.0},
                      {"b", 1.0},           {"flat_normal_bundle", 1.0}};
        v.push_back(std::move(e));
    }

    {
        entry e;
        e.name = "de_sitter_slice";
        e.summary = "totally geodesic slice of a cosh-warped round-sphere model";
        e.amb = ambient::make_config(-1.0, "cosh(sqrt(1.3)*t)/sqrt(1.3)", -kInf, kInf, 2, 1.0, 0);
        e.imm = make_imm({"u1", "u2"}, {{-0.8, 0.8}, {-0.8, 0.8}}, "0", {"u1", "u2"}, false);
        e.expected = {{"alpha_norm2", 0.0}, {"mean_curvature", 0.0}, {"psi_star", 1.3},
                      {"kappa", 1.3},       {"big_b", 0.0},          {"flat_normal_bundle", 1.0}};
        v.push_back(std::move(e));
    }

    {
        entry e;
        e.name = "einstein_de_sitter_slice";
        e.summary = "umbilic slice of the power-law expanding flat-fiber model";
        e.amb = ambient::make_config(-1.0, "t^(1/3)", 0.0, kInf, 3, 0.0, 0);
        e.imm = make_imm({"u1", "u2", "u3"}, {{-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}}, "1",
                         {"u1", "u2", "u3"}, false);
        e.expected = {{"alpha_norm2", 1.0 / 3.0},
                      {"mean_curvature", 1.0 / 3.0},
                      {"psi_fit", 0.0},
                      {"psi_star", 1.0 / 9.0},
                      {"big_b", -1.0 / 3.0},
                      {"b", -1.0 / 9.0},
                      {"laplace_alpha_norm2", 0.0},
                      {"flat_normal_bundle", 1.0}};
        v.push_back(std::move(e));
    }

    {
        entry e;
        e.name = "graph";
        e.summary = "small analytic graph over the fiber of a cosh-warped flat model";
        e.amb = ambient::make_config(-1.0, "cosh(t/2)", -kInf, kInf, 2, 0.0, 0);
        e.imm = make_imm({"u1", "u2"}, {{-0.7, 0.7}, {-0.7, 0.7}}, "1 + 0.1*sin(u1)*cos(u2)",
                         {"u1", "u2"}, false);
        e.expected = {{"flat_normal_bundle", 1.0}};
        v.push_back(std::move(e));
    }

    {
        entry e;
        e.name = "hyperbolic_veronese_cylinder";
        e.summary = "cylinder over the hyperbolic quadratic embedding of the index-2 "
                    "hyperquadric, lifted along the base interval";
        e.amb = ambient::make_config(1.0, "1", -kInf, kInf, 4, -1.0, 2);
        const std::string w = "(u2/sqrt(3))";
        const std::string s3 = "sqrt(3)";
        e.base = make_imm(
            {"u1", "u2"}, {{0.1, 1.2}, {0.3, 1.0}}, "0",
            {"(3*cosh" + w + "^2 - 1)/2",
             "(" + s3 + "/2)*sinh(2*u2/sqrt(3))*sin(u1/sqrt(3))",
             "(" + s3 + "/2)*sinh(2*u2/sqrt(3))*cos(u1/sqrt(3))",
             "(" + s3 + "/2)*sinh" + w + "^2*sin(2*u1/sqrt(3))",
             "(" + s3 + "/2)*sinh" + w + "^2*cos(2*u1/sqrt(3))"},
            true);
        e.imm = extrinsic::cylinder_lift(e.base, -0.75, 0.75);
        e.lifted = true;
        e.expected = {{"alpha_norm2", 4.0 / 3.0}, {"mean_curvature", 0.0},
                      {"psi_fit", 0.0},           {"psi_star", -2.0 / 3.0},
                      {"big_b", -1.0},            {"b", 1.0},
                      {"t_norm2", 1.0},           {"flat_normal_bundle", 0.0}};
        v.push_back(std::move(e));
    }

    {
        entry e;
        e.name = "slice";
        e.summary = "umbilic slice of a cosh-warped round-sphere model";
        e.amb = ambient::make_config(1.0, "cosh(t)", -kInf, kInf, 3, 1.0, 0);
        e.imm = make_imm({"u1", "u2", "u3"}, {{-0.5, 0.5}, {-0.5, 0.5}, {-0.5, 0.5}}, "0.5",
                         {"u1", "u2", "u3"}, false);
        const double ratio = std::tanh(0.5);
        e.expected = {{"alpha_norm2", 3.0 * ratio * ratio},
                      {"mean_curvature", ratio},
                      {"psi_fit", 0.0},
                      {"laplace_alpha_norm2", 0.0},
                      {"flat_normal_bundle", 1.0}};
        v.push_back(std::move(e));
    }

    {
        entry e;
        e.name = "space_form_models";
        e.summary = "umbilic slice of the sine-warped model of the positive space form";
        e.amb = ambient::make_config(1.0, "sin(sqrt(0.5)*t)/0.5", 0.0, kPi / std::sqrt(0.5), 3, 2.0,
                                     0);
        e.imm = make_imm({"u1", "u2", "u3"}, {{-0.6, 0.6}, {-0.6, 0.6}, {-0.6, 0.6}}, "1.2",
                         {"u1", "u2", "u3"}, false);
        const double ratio = std::sqrt(0.5) / std::tan(std::sqrt(0.5) * 1.2);
        e.expected = {{"alpha_norm2", 3.0 * ratio * ratio},
                      {"mean_curvature", ratio},
                      {"psi_fit", 0.0},
                      {"kappa", 0.5},
                      {"laplace_alpha_norm2", 0.0},
                      {"flat_normal_bundle", 1.0}};
        v.push_back(std::move(e));
    }

    {
        entry e;
        e.name = "veronese_RxS4";
        e.summary = "classical quadratic sphere embedding, included as a slice of the "
                    "unwarped product over the round fiber";
        e.amb = ambient::make_config(1.0, "1", -kInf, kInf, 4, 1.0, 0);
        e.imm = make_imm({"u1", "u2"}, {{0.4, 1.2}, {0.3, 1.1}}, "0.25",
                         {"(3*sin(u1)^2 - 6*cos(u1)^2)/6",
                          "sqrt(3)*sin(u1)^2*sin(u2)*cos(u2)",
                          "sqrt(3)*sin(u1)*cos(u1)*cos(u2)",
                          "sqrt(3)*sin(u1)*cos(u1)*sin(u2)",
                          "(sqrt(3)/2)*sin(u1)^2*(cos(u2)^2 - sin(u2)^2)"},
                         true);
        e.expected = {{"alpha_norm2", 4.0 / 3.0}, {"mean_curvature", 0.0},
                      {"psi_fit", 0.0},           {"psi_star", 1.0},
                      {"big_b", 1.0},             {"b", -1.0},
                      {"laplace_alpha_norm2", 0.0},
                      {"flat_normal_bundle", 0.0}};
        v.push_back(std::move(e));
    }

    return v;
}

} // namespace

const std::vector<entry>& all() {
    static const std::vector<entry> entries = build();
    return entries;
}

const entry& find(const std::string& name) {
    for (const auto& e : all())
        if (e.name == name) return e;
    throw error(errc::config, "unknown catalog entry '" + name + "'");
}

std::string list_text() {
    std::ostringstream os;
    for (const auto& e : all()) {
        os << e.name << "\n  " << e.summary << "\n";
        os << "  ambient: eps=" << (e.amb.eps > 0 ? "+1" : "-1") << " warp=" << e.amb.warp.str()
           << " fiber_dim=" << e.amb.fiber_dim << " c=" << e.amb.c << " index=" << e.amb.index
           << "\n";
        os << "  parameters:";
        for (std::size_t i = 0; i < e.imm.params.size(); ++i)
            os << " " << e.imm.params[i] << " in [" << e.imm.sample_region[i].first << ", "
               << e.imm.sample_region[i].second << "]";
        os << "\n";
        if (!e.expected.empty()) {
            os << "  expected:";
            for (const auto& [k, val] : e.expected) os << " " << k << "=" << val;
            os << "\n";
        }
    }
    return os.str();
}

} // namespace wsm::catalog
