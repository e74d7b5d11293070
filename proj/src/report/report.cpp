#include "wsm/report/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "wsm/errors.hpp"
#include "wsm/identities/identities.hpp"

namespace wsm::report {
namespace {

using nlohmann::ordered_json;

constexpr int halton_bases[6] = {2, 3, 5, 7, 11, 13};

const char* kind_name(errc k) {
    switch (k) {
    case errc::shape: return "shape";
    case errc::singularity: return "singularity";
    case errc::chart_domain: return "chart_domain";
    case errc::config: return "config";
    case errc::parse: return "parse";
    case errc::spacelike_violation: return "spacelike_violation";
    case errc::frame: return "frame";
    case errc::linear_algebra: return "linear_algebra";
    case errc::unsupported_signature: return "unsupported_signature";
    case errc::precondition: return "precondition";
    case errc::case_error: return "case_error";
    }
    return "error";
}

// Everything the checks consume at one sample point, computed once.
struct point_ctx {
    std::vector<double> u;
    extrinsic::geometry g;
    identities::pseudo_fit fit;
};

ordered_json json_number_or_inf(double v) {
    if (std::isinf(v))
        return v > 0 ? ordered_json("inf") : ordered_json("-inf");
    return ordered_json(v);
}

double number_or_inf(const ordered_json& j, const char* what) {
    if (j.is_number())
        return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf")
            return std::numeric_limits<double>::infinity();
        if (s == "-inf")
            return -std::numeric_limits<double>::infinity();
    }
    throw error(errc::config, std::string(what) + ": expected a number, \"inf\" or \"-inf\"");
}

ordered_json describe_ambient(const ambient::config& amb) {
    ordered_json out;
    out["eps"] = amb.eps;
    out["warp"] = amb.warp.str();
    out["interval"] = ordered_json::array({json_number_or_inf(amb.lo), json_number_or_inf(amb.hi)});
    out["fiber_dim"] = amb.fiber_dim;
    out["c"] = amb.c;
    out["index"] = amb.index;
    return out;
}

ordered_json describe_immersion(const extrinsic::immersion& imm) {
    ordered_json out;
    out["params"] = imm.params;
    ordered_json region = ordered_json::array();
    for (const auto& [lo, hi] : imm.sample_region)
        region.push_back(ordered_json::array({lo, hi}));
    out["region"] = region;
    out["t"] = imm.t_component.str();
    ordered_json fiber = ordered_json::array();
    for (const auto& f : imm.fiber)
        fiber.push_back(f.str());
    out["fiber"] = fiber;
    out["hyperquadric"] = imm.hyperquadric_stage;
    return out;
}

// One identity check evaluated over the computed points. `eval` fills the
// per-point record and returns the point's absolute and relative residuals;
// it throws wsm::error when the check does not apply to this configuration.
struct check_outcome {
    ordered_json doc;
    bool pass = true;
};

template <class Eval>
check_outcome run_check(const std::string& name, double tol, bool explicit_request,
                        const std::vector<std::optional<point_ctx>>& pts, Eval&& eval) {
    ordered_json doc;
    doc["name"] = name;
    doc["tol"] = tol;
    ordered_json rows = ordered_json::array();
    double max_abs = 0.0, max_rel = 0.0;
    bool evaluated = false;
    for (const auto& ctx : pts) {
        if (!ctx)
            continue;
        ordered_json row;
        row["u"] = ctx->u;
        double abs = 0.0, rel = 0.0;
        try {
            std::tie(abs, rel) = eval(*ctx, row);
        } catch (const error& e) {
            if (explicit_request)
                throw;
            doc["skipped"] = e.what();
            doc["pass"] = true;
            return {doc, true};
        }
        row["abs"] = abs;
        row["rel"] = rel;
        rows.push_back(std::move(row));
        max_abs = std::max(max_abs, abs);
        max_rel = std::max(max_rel, rel);
        evaluated = true;
    }
    doc["points"] = std::move(rows);
    doc["max_abs"] = max_abs;
    doc["max_rel"] = max_rel;
    bool pass = !evaluated || max_rel <= tol;
    doc["pass"] = pass;
    return {doc, pass};
}

std::pair<double, double> residual_pair(const identities::residual& r) {
    return {r.abs, r.rel()};
}

identities::simons_variant variant_of(const std::string& name) {
    if (name == "simons")
        return identities::simons_variant::full;
    if (name == "simons_hypersurface")
        return identities::simons_variant::hypersurface;
    if (name == "simons_nomizu_smyth")
        return identities::simons_variant::nomizu_smyth;
    if (name == "simons_constant_curvature")
        return identities::simons_variant::constant_curvature;
    return identities::simons_variant::product_space;
}

std::string format_num(double v, const char* fmt = "%.3e") {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

} // namespace

double halton(unsigned long long index, int base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % static_cast<unsigned long long>(base));
        index /= static_cast<unsigned long long>(base);
    }
    return r;
}

std::vector<std::vector<double>> sample_points(const extrinsic::immersion& imm, int count,
                                               unsigned long long seed) {
    const std::size_t n = imm.params.size();
    if (n == 0 || n > 6)
        throw error(errc::config, "immersion must have between 1 and 6 parameters");
    if (imm.sample_region.size() != n)
        throw error(errc::config, "sample region size does not match parameter count");
    for (const auto& [lo, hi] : imm.sample_region)
        if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
            throw error(errc::config, "sample region must be a finite nonempty box");
    if (count < 1)
        throw error(errc::config, "point count must be positive");
    std::vector<std::vector<double>> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        std::vector<double> u(n);
        for (std::size_t d = 0; d < n; ++d) {
            const double h = halton(seed + static_cast<unsigned long long>(j), halton_bases[d]);
            u[d] = imm.sample_region[d].first +
                   h * (imm.sample_region[d].second - imm.sample_region[d].first);
        }
        out.push_back(std::move(u));
    }
    return out;
}

const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> names = {
        "fundamental",
        "frames",
        "simons",
        "simons_hypersurface",
        "simons_nomizu_smyth",
        "simons_constant_curvature",
        "simons_product_space",
        "psi_fit",
        "pp_identity",
        "theorem2",
        "lemma_R",
        "normal_flatness",
    };
    return names;
}

double default_tolerance(const std::string& check) {
    if (check == "fundamental" || check == "frames")
        return 1e-8;
    if (check.rfind("simons", 0) == 0)
        return 1e-6;
    if (check == "psi_fit")
        return 1e-8;
    if (check == "pp_identity")
        return 1e-7;
    if (check == "theorem2")
        return 1e-10;
    if (check == "lemma_R" || check == "normal_flatness")
        return 1e-9;
    throw error(errc::config, "unknown check: " + check);
}

target load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw error(errc::config, "cannot open configuration file: " + path);
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const std::exception& e) {
        throw error(errc::config, std::string("configuration is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("ambient") || !doc.contains("immersion"))
        throw error(errc::config, "configuration needs \"ambient\" and \"immersion\" objects");

    const auto& a = doc["ambient"];
    for (const char* key : {"eps", "warp", "interval", "fiber_dim", "c", "index"})
        if (!a.contains(key))
            throw error(errc::config, std::string("ambient block is missing \"") + key + "\"");
    if (!a["interval"].is_array() || a["interval"].size() != 2)
        throw error(errc::config, "ambient interval must be [lo, hi]");

    target t;
    t.name = path;
    t.amb = ambient::make_config(a["eps"].get<double>(), a["warp"].get<std::string>(),
                                 number_or_inf(a["interval"][0], "interval lo"),
                                 number_or_inf(a["interval"][1], "interval hi"),
                                 a["fiber_dim"].get<int>(), a["c"].get<double>(),
                                 a["index"].get<int>());

    const auto& m = doc["immersion"];
    for (const char* key : {"params", "region", "t", "fiber"})
        if (!m.contains(key))
            throw error(errc::config, std::string("immersion block is missing \"") + key + "\"");
    extrinsic::immersion imm;
    imm.params = m["params"].get<std::vector<std::string>>();
    if (!m["region"].is_array() || m["region"].size() != imm.params.size())
        throw error(errc::config, "immersion region must list one [lo, hi] per parameter");
    for (const auto& box : m["region"]) {
        if (!box.is_array() || box.size() != 2)
            throw error(errc::config, "immersion region entries must be [lo, hi]");
        imm.sample_region.emplace_back(box[0].get<double>(), box[1].get<double>());
    }
    imm.t_component = expr::parse(m["t"].get<std::string>());
    for (const auto& f : m["fiber"].get<std::vector<std::string>>())
        imm.fiber.push_back(expr::parse(f));
    imm.hyperquadric_stage = m.value("hyperquadric", false);

    if (m.value("cylinder_lift", false)) {
        if (!m.contains("axis") || !m["axis"].is_array() || m["axis"].size() != 2)
            throw error(errc::config, "cylinder_lift needs an \"axis\" interval [lo, hi]");
        imm = extrinsic::cylinder_lift(imm, m["axis"][0].get<double>(), m["axis"][1].get<double>());
    }
    t.imm = std::move(imm);

    if (doc.contains("expected")) {
        if (!doc["expected"].is_object())
            throw error(errc::config, "expected block must be an object of numbers");
        for (const auto& [key, value] : doc["expected"].items()) {
            if (!value.is_number())
                throw error(errc::config, "expected values must be numbers: " + key);
            t.expected[key] = value.get<double>();
        }
    }
    return t;
}

nlohmann::ordered_json run(const run_config& cfg) {
    // Resolve the target.
    target tgt;
    if (!cfg.catalog_name.empty() && !cfg.config_path.empty())
        throw error(errc::config, "give either a catalog name or a configuration file, not both");
    if (!cfg.catalog_name.empty()) {
        const auto& e = catalog::find(cfg.catalog_name);
        tgt.name = e.name;
        tgt.amb = e.amb;
        tgt.imm = e.imm;
        tgt.expected = e.expected;
    } else if (!cfg.config_path.empty()) {
        tgt = load_config_file(cfg.config_path);
    } else {
        throw error(errc::config, "no target: give a catalog name or a configuration file");
    }

    // Resolve the check list.
    std::vector<std::string> selected;
    if (cfg.checks.empty()) {
        selected = known_checks();
    } else {
        for (std::string name : cfg.checks) {
            if (name == "thresholds")
                name = "theorem2";
            if (std::find(known_checks().begin(), known_checks().end(), name) ==
                known_checks().end())
                throw error(errc::config, "unknown check: " + name);
            if (std::find(selected.begin(), selected.end(), name) == selected.end())
                selected.push_back(name);
        }
    }
    const bool explicit_request = cfg.checks_explicit && !cfg.checks.empty();

    std::map<std::string, double> tol;
    for (const auto& name : known_checks())
        tol[name] = default_tolerance(name);
    for (const auto& [key, value] : cfg.tol) {
        std::string name = key;
        if (name == "thresholds")
            name = "theorem2";
        if (!tol.count(name))
            throw error(errc::config, "tolerance override names an unknown check: " + name);
        if (!(value > 0))
            throw error(errc::config, "tolerance must be positive: " + name);
        tol[name] = value;
    }

    // Evaluate the geometry once per sample point.
    const auto samples = sample_points(tgt.imm, cfg.points, cfg.seed);
    std::vector<std::optional<point_ctx>> pts(samples.size());
    ordered_json point_errors = ordered_json::array();
    for (std::size_t j = 0; j < samples.size(); ++j) {
        try {
            point_ctx ctx;
            ctx.u = samples[j];
            ctx.g = extrinsic::compute(tgt.amb, tgt.imm, samples[j]);
            ctx.fit = identities::fit_psi(ctx.g);
            pts[j] = std::move(ctx);
        } catch (const error& e) {
            ordered_json err;
            err["point"] = j;
            err["u"] = samples[j];
            err["kind"] = kind_name(e.kind());
            err["message"] = e.what();
            point_errors.push_back(std::move(err));
        }
    }

    const auto expect = [&](const char* key) -> std::optional<double> {
        auto it = tgt.expected.find(key);
        if (it == tgt.expected.end())
            return std::nullopt;
        return it->second;
    };

    ordered_json rep;
    rep["catalog"] = cfg.catalog_name.empty() ? ordered_json(nullptr) : ordered_json(tgt.name);
    if (!cfg.config_path.empty())
        rep["config"] = cfg.config_path;
    rep["ambient"] = describe_ambient(tgt.amb);
    rep["immersion"] = describe_immersion(tgt.imm);
    rep["points"] = cfg.points;
    rep["seed"] = cfg.seed;

    ordered_json identities_doc = ordered_json::array();
    bool all_pass = point_errors.empty();

    for (const auto& name : selected) {
        check_outcome out;
        const double t = tol[name];

        if (name == "fundamental") {
            out = run_check(name, t, explicit_request, pts,
                            [](const point_ctx& c, ordered_json& row) {
                                const auto r = identities::check_fundamental(c.g);
                                row["gauss"] = ordered_json{{"abs", r.gauss.abs}, {"rel", r.gauss.rel()}};
                                row["codazzi"] =
                                    ordered_json{{"abs", r.codazzi.abs}, {"rel", r.codazzi.rel()}};
                                row["ricci"] = ordered_json{{"abs", r.ricci.abs}, {"rel", r.ricci.rel()}};
                                const double abs =
                                    std::max({r.gauss.abs, r.codazzi.abs, r.ricci.abs});
                                const double rel =
                                    std::max({r.gauss.rel(), r.codazzi.rel(), r.ricci.rel()});
                                return std::pair{abs, rel};
                            });
        } else if (name == "frames") {
            out = run_check(name, t, explicit_request, pts,
                            [](const point_ctx& c, ordered_json& row) {
                                const auto r = identities::check_frames(c.g);
                                row["orthonormality"] = r.orthonormality;
                                row["decomposition"] = r.decomposition;
                                row["norm_split"] = r.norm_split;
                                row["covariant_t"] = r.covariant_t;
                                row["covariant_xi"] = r.covariant_xi;
                                row["weingarten"] = r.weingarten;
                                return std::pair{r.max(), r.max()};
                            });
        } else if (name.rfind("simons", 0) == 0) {
            const auto variant = variant_of(name);
            out = run_check(name, t, explicit_request, pts,
                            [&](const point_ctx& c, ordered_json& row) {
                                const auto r = identities::check_simons(c.g, tgt.amb, variant);
                                row["lhs"] = r.lhs;
                                row["rhs"] = r.rhs;
                                ordered_json terms;
                                for (const auto& [term, value] : r.terms)
                                    terms[term] = value;
                                row["terms"] = std::move(terms);
                                return residual_pair(r.res);
                            });
        } else if (name == "psi_fit") {
            const auto want_psi = expect("psi_fit");
            out = run_check(
                name, t, explicit_request, pts, [&](const point_ctx& c, ordered_json& row) {
                    const auto& fit = c.fit;
                    row["psi"] = fit.psi;
                    row["residual_at_fit"] = fit.residual_at_fit;
                    row["residual_at_zero"] = fit.residual_at_zero;
                    row["c_norm"] = fit.c_norm;
                    row["underdetermined"] = fit.underdetermined;
                    // The residual tensor is affine in psi, so its sup norm is
                    // convex and 1-Lipschitz against the coefficient norm.
                    const double r0 = fit.residual_at_zero;
                    const double r1 = identities::pseudo_residual(c.g, 1.0);
                    const double r2 = identities::pseudo_residual(c.g, 2.0);
                    const double scale = std::max({1.0, r0, r1, r2});
                    const double convexity = std::max(0.0, 2.0 * r1 - r0 - r2);
                    const double growth =
                        std::max(0.0, std::abs(r1 - r0) - fit.c_norm);
                    double abs = std::max(convexity, growth);
                    row["affinity_defect"] = abs;
                    if (want_psi) {
                        abs = std::max({abs, std::abs(fit.psi - *want_psi),
                                        fit.residual_at_fit});
                        row["psi_expected"] = *want_psi;
                    }
                    return std::pair{abs, abs / scale};
                });
        } else if (name == "pp_identity") {
            out = run_check(name, t, explicit_request, pts,
                            [&](const point_ctx& c, ordered_json& row) {
                                row["psi"] = c.fit.psi;
                                row["pseudo_residual"] = c.fit.residual_at_fit;
                                const auto r = identities::check_pp_identity(c.g, c.fit.psi);
                                return residual_pair(r);
                            });
        } else if (name == "theorem2") {
            const auto want_star = expect("psi_star");
            const auto want_b = expect("big_b");
            out = run_check(
                name, t, explicit_request, pts, [&](const point_ctx& c, ordered_json& row) {
                    const auto r = identities::threshold_classify(c.g, tgt.amb, c.fit.psi);
                    row["case"] = identities::to_string(r.case_tag);
                    row["psi"] = r.psi;
                    row["psi_star"] = r.psi_star;
                    row["big_b"] = r.big_b;
                    row["alpha_norm2"] = r.alpha_norm2;
                    row["extremal"] = r.extremal;
                    row["b_sign_ok"] = r.b_sign_ok;
                    row["psi_ok"] = r.psi_ok;
                    row["waiver"] = r.waiver;
                    row["hypotheses_met"] = r.hypotheses_met;
                    row["prediction"] = identities::to_string(r.prediction);
                    double abs = 0.0;
                    if (r.prediction == identities::threshold_prediction::geodesic_point)
                        abs = std::max(abs, r.alpha_norm2);
                    if (want_star) {
                        abs = std::max(abs, std::abs(r.psi_star - *want_star));
                        row["psi_star_expected"] = *want_star;
                    }
                    if (want_b) {
                        abs = std::max(abs, std::abs(r.big_b - *want_b));
                        row["big_b_expected"] = *want_b;
                    }
                    return std::pair{abs, abs};
                });
        } else if (name == "lemma_R") {
            out = run_check(name, t, explicit_request, pts,
                            [](const point_ctx& c, ordered_json& row) {
                                if (c.fit.residual_at_fit > 1e-7)
                                    throw error(errc::precondition,
                                                "submanifold is not pseudo-parallel at the "
                                                "fitted psi");
                                const double d = identities::mean_normal_curvature_defect(c.g);
                                row["psi"] = c.fit.psi;
                                return std::pair{d, d};
                            });
        } else if (name == "normal_flatness") {
            const auto want_flat = expect("flat_normal_bundle");
            ordered_json doc;
            doc["name"] = name;
            doc["tol"] = t;
            ordered_json rows = ordered_json::array();
            double max_abs = 0.0;
            bool pass = true;
            for (const auto& ctx : pts) {
                if (!ctx)
                    continue;
                const double d = identities::normal_flatness_defect(ctx->g);
                ordered_json row;
                row["u"] = ctx->u;
                row["abs"] = d;
                row["rel"] = d;
                if (want_flat) {
                    const bool ok = (*want_flat != 0.0) ? d <= t : d > 1e-3;
                    row["required"] = (*want_flat != 0.0) ? "zero" : "nonzero";
                    if (!ok)
                        pass = false;
                }
                rows.push_back(std::move(row));
                max_abs = std::max(max_abs, d);
            }
            doc["points"] = std::move(rows);
            doc["max_abs"] = max_abs;
            doc["max_rel"] = max_abs;
            if (!want_flat)
                doc["informational"] = true;
            doc["pass"] = pass;
            out = {std::move(doc), pass};
        } else {
            throw error(errc::config, "unknown check: " + name);
        }

        all_pass = all_pass && out.pass;
        identities_doc.push_back(std::move(out.doc));
    }

    rep["identities"] = std::move(identities_doc);
    rep["errors"] = std::move(point_errors);
    rep["pass"] = all_pass;
    return rep;
}

bool passed(const nlohmann::ordered_json& rep) {
    return rep.value("pass", false);
}

std::string render_text(const nlohmann::ordered_json& rep) {
    std::ostringstream out;
    if (!rep["catalog"].is_null())
        out << "catalog " << rep["catalog"].get<std::string>();
    else
        out << "config " << rep.value("config", std::string("<inline>"));
    out << "   points " << rep["points"].get<int>() << "   seed " << rep["seed"].get<unsigned long long>()
        << "\n";
    for (const auto& ident : rep["identities"]) {
        const auto name = ident["name"].get<std::string>();
        out << "  " << name;
        for (std::size_t pad = name.size(); pad < 26; ++pad)
            out << ' ';
        if (ident.contains("skipped")) {
            out << "skipped (" << ident["skipped"].get<std::string>() << ")\n";
            continue;
        }
        out << "max_abs " << format_num(ident["max_abs"].get<double>()) << "  max_rel "
            << format_num(ident["max_rel"].get<double>()) << "  tol "
            << format_num(ident["tol"].get<double>(), "%.1e") << "  "
            << (ident["pass"].get<bool>() ? "PASS" : "FAIL");
        if (ident.contains("informational"))
            out << "  (informational)";
        out << "\n";
    }
    for (const auto& err : rep["errors"])
        out << "  point " << err["point"].get<std::size_t>() << ": "
            << err["kind"].get<std::string>() << ": " << err["message"].get<std::string>()
            << "\n";
    out << "RESULT " << (rep["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

} // namespace wsm::report
