#include "towers/registry.hpp"

#include <fstream>
#include <sstream>

#include "towers/checks.hpp"
#include "towers/divisor.hpp"
#include "towers/hermitian.hpp"

namespace towers {

namespace {

int64_t geti(const ParamMap& pm, const std::string& key, int64_t def) {
    auto it = pm.find(key);
    return it == pm.end() ? def : std::stoll(it->second);
}
std::string gets(const ParamMap& pm, const std::string& key, const std::string& def) {
    auto it = pm.find(key);
    return it == pm.end() ? def : it->second;
}
FieldCase case_of(const ParamMap& pm, const std::string& def) {
    std::string c = gets(pm, "case", def);
    if (c == "split") return FieldCase::Split;
    if (c == "inert") return FieldCase::Inert;
    fail(Errc::ConfigError, "unknown case: " + c);
}

ParamMap pmize(std::initializer_list<std::pair<const char*, const char*>> kv) {
    ParamMap m;
    for (const auto& [k, v] : kv) m[k] = v;
    return m;
}

const RingSpec& inert_ring_for(uint64_t p, unsigned K, int d, const ParamMap& pm) {
    if (pm.count("s") && pm.count("t"))
        return RingSpec::inert(p, K, geti(pm, "s", 0), geti(pm, "t", 0), d);
    return RingSpec::inert_field(p, K, d);
}

std::vector<CheckDef> build_registry() {
    std::vector<CheckDef> reg;

    reg.push_back({"appendix-split",
                   "closed immersion, sigma_v/sigma'_w transversals, degree equality (split model)",
                   {pmize({{"p", "2"}, {"m", "1"}, {"n", "6"}}),
                    pmize({{"p", "3"}, {"m", "1"}, {"n", "6"}})},
                   [](const ParamMap& pm, uint64_t seed) {
                       return appendix_checks(FieldCase::Split, static_cast<uint64_t>(geti(pm, "p", 2)),
                                              static_cast<int>(geti(pm, "m", 1)),
                                              static_cast<int>(geti(pm, "n", 6)), seed);
                   }});
    reg.push_back({"appendix-inert",
                   "closed immersion, sigma_v/sigma'_w transversals, degree equality (inert model)",
                   {pmize({{"p", "2"}, {"m", "1"}, {"n", "6"}}),
                    pmize({{"p", "3"}, {"m", "1"}, {"n", "6"}})},
                   [](const ParamMap& pm, uint64_t seed) {
                       return appendix_checks(FieldCase::Inert, static_cast<uint64_t>(geti(pm, "p", 2)),
                                              static_cast<int>(geti(pm, "m", 1)),
                                              static_cast<int>(geti(pm, "n", 6)), seed);
                   }});
    reg.push_back({"index-p10",
                   "[V_{p^n,p^m} : V'] = p^10 by order counting",
                   {pmize({{"case", "split"}, {"p", "2"}, {"m", "1"}, {"n", "6"}}),
                    pmize({{"case", "split"}, {"p", "3"}, {"m", "1"}, {"n", "6"}}),
                    pmize({{"case", "split"}, {"p", "5"}, {"m", "1"}, {"n", "6"}}),
                    pmize({{"case", "inert"}, {"p", "2"}, {"m", "1"}, {"n", "6"}}),
                    pmize({{"case", "inert"}, {"p", "3"}, {"m", "1"}, {"n", "6"}})},
                   [](const ParamMap& pm, uint64_t seed) {
                       return std::vector<CheckReport>{index_p10_check(
                           case_of(pm, "split"), static_cast<uint64_t>(geti(pm, "p", 2)),
                           static_cast<int>(geti(pm, "m", 1)), static_cast<int>(geti(pm, "n", 6)), seed)};
                   }});
    reg.push_back({"remark-pattern",
                   "recursive tower equals the resolved congruence pattern",
                   {pmize({{"p", "2"}, {"m", "1"}, {"n", "4"}, {"samples", "100000"}})},
                   [](const ParamMap& pm, uint64_t seed) {
                       return std::vector<CheckReport>{remark_pattern_equivalence(
                           static_cast<uint64_t>(geti(pm, "p", 2)), static_cast<int>(geti(pm, "m", 1)),
                           static_cast<int>(geti(pm, "n", 4)),
                           static_cast<size_t>(geti(pm, "samples", 100000)), seed,
                           gets(pm, "fault", "none") != "none")};
                   }});
    reg.push_back({"exact-order",
                   "points of exact order versus mirabolic cosets (level-structure bijection)",
                   {pmize({{"g", "2"}, {"p", "2"}, {"m", "1"}}),
                    pmize({{"g", "1"}, {"p", "3"}, {"m", "1"}}),
                    pmize({{"g", "1"}, {"p", "2"}, {"m", "2"}})},
                   [](const ParamMap& pm, uint64_t) {
                       return std::vector<CheckReport>{exact_order_bijection_check(
                           static_cast<int>(geti(pm, "g", 2)), static_cast<uint64_t>(geti(pm, "p", 2)),
                           static_cast<int>(geti(pm, "m", 1)),
                           static_cast<uint64_t>(geti(pm, "cap", 20'000'000)))};
                   }});
    {
        std::vector<ParamMap> grid;
        for (int c1 : {2, 3, 4, 5})
            for (int c2 : {2, 3, 4, 5})
                for (int g : {1, 2}) {
                    ParamMap pm;
                    pm["c1"] = std::to_string(c1);
                    pm["c2"] = std::to_string(c2);
                    pm["g"] = std::to_string(g);
                    grid.push_back(pm);
                }
        reg.push_back({"divisor-distribution",
                       "[c1]^* D_{c2} + c2^{2g} D_{c1} = D_{c1 c2}",
                       grid,
                       [](const ParamMap& pm, uint64_t) {
                           return std::vector<CheckReport>{distribution_check(
                               geti(pm, "c1", 2), geti(pm, "c2", 3), static_cast<int>(geti(pm, "g", 1)))};
                       }});
    }
    reg.push_back({"trace-invariance",
                   "deg D_c = 0 and pushforward invariance for all units",
                   {pmize({{"c_max", "10"}, {"g_max", "2"}})},
                   [](const ParamMap& pm, uint64_t) {
                       return std::vector<CheckReport>{trace_invariance_check(
                           geti(pm, "c_max", 10), static_cast<int>(geti(pm, "g_max", 2)))};
                   }});
    reg.push_back({"duality-pairing",
                   "Gysin-dual pairing: <phi(v), b> = b deg(v)",
                   {pmize({{"c", "2"}, {"g", "2"}, {"samples", "200"}}),
                    pmize({{"c", "3"}, {"g", "1"}, {"samples", "200"}})},
                   [](const ParamMap& pm, uint64_t seed) {
                       return std::vector<CheckReport>{duality_pairing_check(
                           geti(pm, "c", 2), static_cast<int>(geti(pm, "g", 2)),
                           static_cast<int>(geti(pm, "samples", 200)), seed)};
                   }});
    {
        std::vector<ParamMap> grid;
        for (int g = 1; g <= 3; ++g)
            for (int m = 1; m <= 5; ++m) {
                ParamMap pm;
                pm["g"] = std::to_string(g);
                pm["m"] = std::to_string(m);
                grid.push_back(pm);
            }
        reg.push_back({"fm-annihilation",
                       "F_m kills the truncated degrees; N_m on the fixed line",
                       grid,
                       [](const ParamMap& pm, uint64_t) {
                           return std::vector<CheckReport>{f_m_annihilation_check(
                               static_cast<int>(geti(pm, "g", 2)), geti(pm, "m", 2))};
                       }});
    }
    reg.push_back({"nm-unit",
                   "v_p(N_m) with the p > 2g+1 primitive-root sufficiency grid",
                   {pmize({{"p", "7"}, {"g", "2"}, {"m", "3"}}),
                    pmize({{"p", "5"}, {"g", "2"}, {"m", "2"}}),
                    pmize({{"grid", "1"}, {"p_max", "23"}, {"g_max", "3"}})},
                   [](const ParamMap& pm, uint64_t) {
                       if (geti(pm, "grid", 0))
                           return std::vector<CheckReport>{n_m_grid_check(
                               static_cast<uint64_t>(geti(pm, "p_max", 23)),
                               static_cast<int>(geti(pm, "g_max", 3)))};
                       return std::vector<CheckReport>{n_m_unit_check(
                           static_cast<uint64_t>(geti(pm, "p", 7)), static_cast<int>(geti(pm, "g", 2)),
                           geti(pm, "m", 3))};
                   }});
    reg.push_back({"split-iso",
                   "split-coordinate isomorphism roundtrip",
                   {pmize({{"p", "5"}, {"K", "3"}, {"samples", "10000"}})},
                   [](const ParamMap& pm, uint64_t seed) {
                       return std::vector<CheckReport>{split_iso_check(
                           static_cast<uint64_t>(geti(pm, "p", 5)),
                           static_cast<unsigned>(geti(pm, "K", 3)),
                           static_cast<int>(geti(pm, "samples", 10000)), seed)};
                   }});
    reg.push_back({"hermit-decompose",
                   "hermitian pairing decomposition and J-restriction",
                   {pmize({{"p", "3"}, {"field-d", "-1"}, {"samples", "10000"}}),
                    pmize({{"p", "2"}, {"field-d", "-3"}, {"samples", "10000"}})},
                   [](const ParamMap& pm, uint64_t seed) {
                       uint64_t p = static_cast<uint64_t>(geti(pm, "p", 3));
                       int d = static_cast<int>(geti(pm, "field-d", -1));
                       const RingSpec& R = inert_ring_for(p, static_cast<unsigned>(geti(pm, "K", 1)), d, pm);
                       return std::vector<CheckReport>{hermitian_decomposition_check(
                           R, static_cast<int>(geti(pm, "samples", 10000)), seed)};
                   }});
    reg.push_back({"of-points",
                   "V1-coset row map, admissible-row completion, O_F-point bijection",
                   {pmize({{"p", "2"}, {"r", "1"}, {"case", "inert"}, {"field-d", "-3"}, {"samples", "60"}}),
                    pmize({{"p", "5"}, {"r", "1"}, {"case", "split"}, {"field-d", "-1"}, {"samples", "40"}}),
                    pmize({{"p", "3"}, {"r", "1"}, {"case", "inert"}, {"field-d", "-1"}, {"samples", "60"}})},
                   [](const ParamMap& pm, uint64_t seed) {
                       return std::vector<CheckReport>{ofpoint_structure_check(
                           static_cast<uint64_t>(geti(pm, "p", 2)), static_cast<int>(geti(pm, "r", 1)),
                           case_of(pm, "inert"), static_cast<int>(geti(pm, "field-d", -3)),
                           static_cast<int>(geti(pm, "samples", 60)), seed)};
                   }});
    reg.push_back({"gsp6-stabilizer",
                   "stabilizer of the GSp6 orbit representative is the 1-dim torus",
                   {pmize({{"p", "5"}}), pmize({{"p", "7"}})},
                   [](const ParamMap& pm, uint64_t) {
                       return std::vector<CheckReport>{gsp6_stabilizer_check(
                           static_cast<uint64_t>(geti(pm, "p", 5)))};
                   }});
    reg.push_back({"oracle-g1",
                   "g=1 tower pipeline against brute force",
                   {pmize({{"p", "2"}, {"m", "1"}, {"n", "4"}}),
                    pmize({{"p", "3"}, {"m", "1"}, {"n", "3"}})},
                   [](const ParamMap& pm, uint64_t seed) {
                       return std::vector<CheckReport>{oracle_g1_check(
                           static_cast<uint64_t>(geti(pm, "p", 2)), static_cast<int>(geti(pm, "m", 1)),
                           static_cast<int>(geti(pm, "n", 4)), seed)};
                   }});
    return reg;
}

}  // namespace

const std::vector<CheckDef>& check_registry() {
    static std::vector<CheckDef> reg = build_registry();
    return reg;
}

const CheckDef* find_check(const std::string& name) {
    for (const auto& c : check_registry())
        if (c.name == name) return &c;
    return nullptr;
}

std::vector<const CheckDef*> filter_checks(const std::string& substring) {
    std::vector<const CheckDef*> out;
    for (const auto& c : check_registry())
        if (substring.empty() || c.name.find(substring) != std::string::npos) out.push_back(&c);
    return out;
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream is(text);
    std::string line, section;
    std::map<std::string, std::vector<std::string>> keys;  // current section key lists
    auto flush = [&]() {
        if (section.empty()) return;
        std::vector<ParamMap> grid{{}};
        for (const auto& [k, vals] : keys) {
            std::vector<ParamMap> next;
            for (const auto& pm : grid)
                for (const auto& v : vals) {
                    ParamMap ext = pm;
                    ext[k] = v;
                    next.push_back(ext);
                }
            grid = std::move(next);
        }
        if (keys.empty()) grid.clear();
        cfg.checks.emplace_back(section, grid);
        keys.clear();
    };
    while (std::getline(is, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(Errc::ConfigError, "bad section header: " + line);
            flush();
            section = trim(line.substr(1, line.size() - 2));
            if (!find_check(section)) fail(Errc::ConfigError, "unknown check: " + section);
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) fail(Errc::ConfigError, "expected key = value: " + line);
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (section.empty()) {
            if (key == "seed")
                cfg.seed = std::stoull(val);
            else if (key == "cap")
                cfg.cap = std::stoull(val);
            else if (key == "output")
                cfg.output_path = val;
            else if (key.rfind("minpoly.", 0) == 0) {
                int d = std::stoi(key.substr(8));
                auto st = split_list(val);
                if (st.size() != 2) fail(Errc::ConfigError, "minpoly needs s,t");
                cfg.field_minpoly[d] = {std::stoll(st[0]), std::stoll(st[1])};
            } else {
                fail(Errc::ConfigError, "unknown global key: " + key);
            }
            continue;
        }
        keys[key] = split_list(val);
    }
    flush();
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail(Errc::IOError, "cannot read config: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

RunResult run_checks(const RunConfig& config) {
    if (config.checks.empty()) fail(Errc::ConfigError, "empty check list");
    RunResult res;
    json reports = json::array();
    bool any_fail = false, any_abort = false;
    for (const auto& [name, grid0] : config.checks) {
        const CheckDef* def = find_check(name);
        if (!def) fail(Errc::ConfigError, "unknown check: " + name);
        std::vector<ParamMap> grid = grid0.empty() ? def->default_grid : grid0;
        if (grid.empty()) fail(Errc::ConfigError, "empty parameter grid for " + name);
        for (ParamMap pm : grid) {
            if (!pm.count("cap")) pm["cap"] = std::to_string(config.cap);
            // apply field minpoly overrides when the check addresses a field
            auto it = pm.find("field-d");
            if (it != pm.end()) {
                int d = std::stoi(it->second);
                auto ov = config.field_minpoly.find(d);
                if (ov != config.field_minpoly.end()) {
                    pm["s"] = std::to_string(ov->second.first);
                    pm["t"] = std::to_string(ov->second.second);
                }
            }
            std::string key = name;
            for (const auto& [k, v] : pm) key += ";" + k + "=" + v;
            uint64_t seed = config.seed ^ static_cast<uint64_t>(std::hash<std::string>{}(key));
            try {
                auto out = def->run(pm, seed);
                for (auto& r : out) {
                    json pj = r.params;
                    r.seed = seed;
                    if (!r.pass) any_fail = true;
                    if (r.status == 2) any_abort = true;
                    reports.push_back(r.to_json());
                }
            } catch (const Error& e) {
                CheckReport r;
                r.name = name;
                for (const auto& [k, v] : pm) r.params[k] = v;
                r.pass = false;
                r.status = 2;
                r.seed = seed;
                r.add_counterexample(e.what());
                reports.push_back(r.to_json());
                any_abort = true;
            }
        }
    }
    res.bundle = json{{"artifact_version", kArtifactVersion},
                      {"seed", config.seed},
                      {"reports", reports}};
    res.exit_code = any_abort ? 2 : (any_fail ? 1 : 0);
    return res;
}

}  // namespace towers
