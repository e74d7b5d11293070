#pragma once

/** \file
 *  \brief Verification runner: sample points, run checks, emit a report.
 *
 *  The report is deterministic: equal run configurations produce byte-equal
 *  JSON and text, independent of the host. Sample points come from a Halton
 *  sequence offset by the seed and scaled into the immersion's sample box.
 */

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "wsm/ambient/ambient.hpp"
#include "wsm/catalog/catalog.hpp"
#include "wsm/extrinsic/extrinsic.hpp"

namespace wsm::report {

struct run_config {
    std::string catalog_name;            ///< built-in entry, or
    std::string config_path;             ///< path to a JSON configuration
    std::vector<std::string> checks;     ///< empty: every applicable check
    bool checks_explicit = false;        ///< user named the checks; inapplicable = error
    int points = 5;
    unsigned long long seed = 1;
    std::map<std::string, double> tol;   ///< per-check tolerance overrides
};

/// Radical-inverse (van der Corput) value of `index` in the given base.
double halton(unsigned long long index, int base);

/// Deterministic interior sample points for the immersion's box.
std::vector<std::vector<double>> sample_points(const extrinsic::immersion& imm, int count,
                                               unsigned long long seed);

/// Default tolerance of a named check.
double default_tolerance(const std::string& check);

/// Canonical order of all known check names.
const std::vector<std::string>& known_checks();

/// Load an ambient + immersion target from a JSON configuration file.
struct target {
    std::string name;
    ambient::config amb;
    extrinsic::immersion imm;
    std::map<std::string, double> expected;
};
target load_config_file(const std::string& path);

/// Execute the run; throws wsm::error for configuration problems.
nlohmann::ordered_json run(const run_config& cfg);

/// Overall verdict of a finished report.
bool passed(const nlohmann::ordered_json& rep);

/// One line per identity plus a final verdict, for terminal output.
std::string render_text(const nlohmann::ordered_json& rep);

} // namespace wsm::report
