// Batch verifier CLI: run the registered checks, print or write JSON bundles.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "towers/errors.hpp"
#include "towers/registry.hpp"

using namespace towers;

namespace {

int emit(const RunResult& res, const std::string& json_path) {
    for (const auto& r : res.bundle["reports"]) {
        std::cout << (r["pass"].get<bool>() ? "[PASS] " : (r["status"].get<int>() == 2 ? "[ABRT] " : "[FAIL] "))
                  << r["name"].get<std::string>() << " " << r["params"].dump()
                  << " (" << r["elapsed_ms"].get<int64_t>() << " ms)\n";
        if (!r["pass"].get<bool>())
            for (const auto& c : r["counterexamples"]) std::cout << "       " << c.get<std::string>() << "\n";
    }
    if (!json_path.empty()) {
        std::ofstream f(json_path);
        if (!f) {
            std::cerr << "cannot write " << json_path << "\n";
            return 2;
        }
        f << res.bundle.dump(2) << "\n";
    } else {
        std::cout << res.bundle.dump(2) << "\n";
    }
    return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verifier for congruence towers, coset transversals, and torsion divisors"};
    app.require_subcommand(1);

    std::string config_path, json_path;
    uint64_t seed = 2024, cap = 20'000'000;
    std::map<std::string, std::string> overrides;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--json", json_path, "write the report bundle to this path");
        cmd->add_option("--seed", seed, "root seed");
        cmd->add_option("--cap", cap, "enumeration cap");
        for (const char* k : {"p", "m", "n", "g", "case", "field-d", "samples", "c1", "c2", "r", "K"}) {
            std::string key = k;
            cmd->add_option_function<std::string>(
                "--" + key, [&overrides, key](const std::string& v) { overrides[key] = v; },
                "override parameter " + key);
        }
    };

    auto* run = app.add_subcommand("run", "run checks from a config file (or all by default)");
    run->add_option("--config", config_path, "plain-text config: [check] sections, key = values");
    std::vector<std::string> run_names;
    run->add_option("checks", run_names, "check names to run (default: every registered check)");
    add_common(run);

    auto* list = app.add_subcommand("list", "list registered checks");
    std::string filter;
    list->add_option("filter", filter, "substring filter");

    std::vector<CLI::App*> direct;
    for (const auto& def : check_registry()) {
        auto* cmd = app.add_subcommand(def.name, def.summary);
        add_common(cmd);
        direct.push_back(cmd);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            for (const auto* c : filter_checks(filter))
                std::cout << c->name << "  -  " << c->summary << "\n";
            return 0;
        }
        RunConfig cfg;
        bool seed_flag = false, cap_flag = false;
        auto scan_flags = [&](CLI::App* cmd) {
            seed_flag = cmd->count("--seed") > 0;
            cap_flag = cmd->count("--cap") > 0;
        };
        auto with_overrides = [&](const CheckDef& def) {
            std::vector<ParamMap> grid;
            if (overrides.empty()) return grid;  // empty = use defaults
            ParamMap pm = def.default_grid.empty() ? ParamMap{} : def.default_grid.front();
            for (const auto& [k, v] : overrides) pm[k] = v;
            grid.push_back(pm);
            return grid;
        };
        if (run->parsed()) {
            scan_flags(run);
            if (!config_path.empty()) {
                cfg = parse_config_file(config_path);
                if (!overrides.empty())
                    for (auto& [name, grid] : cfg.checks) {
                        const CheckDef* def = find_check(name);
                        if (grid.empty() && def) grid = def->default_grid;
                        for (auto& pm : grid)
                            for (const auto& [k, v] : overrides) pm[k] = v;
                    }
            } else {
                auto add = [&](const CheckDef& def) {
                    cfg.checks.emplace_back(def.name, with_overrides(def));
                };
                if (!run_names.empty()) {
                    for (const auto& n : run_names) {
                        const CheckDef* def = find_check(n);
                        if (!def) fail(Errc::ConfigError, "unknown check: " + n);
                        add(*def);
                    }
                } else {
                    for (const auto& def : check_registry()) add(def);
                }
            }
        } else {
            for (size_t i = 0; i < check_registry().size(); ++i)
                if (direct[i]->parsed()) {
                    scan_flags(direct[i]);
                    cfg.checks.emplace_back(check_registry()[i].name,
                                            with_overrides(check_registry()[i]));
                }
        }
        if (seed_flag) cfg.seed = seed;
        if (cap_flag) cfg.cap = cap;
        RunResult res = run_checks(cfg);
        return emit(res, json_path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
