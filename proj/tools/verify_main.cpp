// Command-line front end: run verification checks on a built-in catalog
// entry or a JSON-configured immersion, print one line per identity, and
// optionally dump the full JSON report. Exit codes: 0 all checks pass,
// 1 at least one check fails, 2 configuration problem.

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wsm/catalog/catalog.hpp"
#include "wsm/errors.hpp"
#include "wsm/report/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"verification engine for spacelike submanifolds of warped products"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "run identity checks on one configuration");
    std::string catalog_name, config_path, out_path;
    std::vector<std::string> checks, tols;
    int points = 5;
    unsigned long long seed = 1;
    verify->add_option("--catalog", catalog_name, "name of a built-in catalog entry");
    verify->add_option("--config", config_path, "path to a JSON ambient/immersion configuration");
    verify->add_option("--checks", checks,
                       "comma-separated check names (default: every applicable check); "
                       "`thresholds` is an alias for theorem2")
        ->delimiter(',');
    verify->add_option("--points", points, "number of sample points (default 5)");
    verify->add_option("--seed", seed, "sample sequence offset (default 1)");
    verify->add_option("--tol", tols, "tolerance override NAME=VALUE, repeatable")->delimiter(',');
    verify->add_option("--out", out_path, "write the JSON report to this file");

    app.add_subcommand("list-catalog", "list the built-in catalog entries");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (app.get_subcommand("list-catalog")->parsed()) {
        std::cout << wsm::catalog::list_text();
        return 0;
    }

    try {
        wsm::report::run_config cfg;
        cfg.catalog_name = catalog_name;
        cfg.config_path = config_path;
        cfg.checks = checks;
        cfg.checks_explicit = !checks.empty();
        cfg.points = points;
        cfg.seed = seed;
        for (const auto& spec : tols) {
            const auto eq = spec.find('=');
            if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
                throw wsm::error(wsm::errc::config, "tolerance override must be NAME=VALUE: " + spec);
            std::size_t used = 0;
            double value = 0.0;
            try {
                value = std::stod(spec.substr(eq + 1), &used);
            } catch (const std::exception&) {
                throw wsm::error(wsm::errc::config, "tolerance value is not a number: " + spec);
            }
            if (used != spec.size() - eq - 1)
                throw wsm::error(wsm::errc::config, "tolerance value is not a number: " + spec);
            cfg.tol[spec.substr(0, eq)] = value;
        }

        const auto rep = wsm::report::run(cfg);
        std::cout << wsm::report::render_text(rep);
        if (!out_path.empty()) {
            std::ofstream out(out_path);
            if (!out)
                throw wsm::error(wsm::errc::config, "cannot write report file: " + out_path);
            out << rep.dump(2) << "\n";
        }
        return wsm::report::passed(rep) ? 0 : 1;
    } catch (const wsm::error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    }
}
