#pragma once

#include <functional>
#include <map>

#include "towers/report.hpp"

namespace towers {

/// One parameter assignment for a check: name -> scalar (string-typed; checks
/// parse what they need).
using ParamMap = std::map<std::string, std::string>;

struct CheckDef {
    std::string name;
    std::string summary;
    // default parameter grid: list of assignments to run when none configured
    std::vector<ParamMap> default_grid;
    std::function<std::vector<CheckReport>(const ParamMap&, uint64_t seed)> run;
};

const std::vector<CheckDef>& check_registry();
const CheckDef* find_check(const std::string& name);
std::vector<const CheckDef*> filter_checks(const std::string& substring);

struct RunConfig {
    // pairs (check name, explicit grid); empty grid means the default grid
    std::vector<std::pair<std::string, std::vector<ParamMap>>> checks;
    uint64_t seed = 2024;
    uint64_t cap = 20'000'000;
    std::string output_path;  // empty: stdout
    std::map<int, std::pair<int64_t, int64_t>> field_minpoly;  // d -> (s, t) overrides
};

/// Plain-text config: "key = value" lines with [check-name] sections; keys in a
/// section accumulate into one grid via cartesian product of comma-separated
/// values. Global keys (seed, cap, output) live before the first section.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

struct RunResult {
    json bundle;
    int exit_code = 0;  // 0 all pass, 1 any fail, 2 any infeasible/aborted
};
RunResult run_checks(const RunConfig& config);

}  // namespace towers
