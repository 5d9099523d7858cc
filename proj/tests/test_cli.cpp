#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "towers/errors.hpp"
#include "towers/registry.hpp"

using namespace towers;

TEST_CASE("registry catalog") {
    CHECK(check_registry().size() == 15);
    CHECK(filter_checks("").size() == 15);
    CHECK(filter_checks("appendix").size() == 2);
    CHECK(filter_checks("no-such-check").empty());
    for (const char* name :
         {"appendix-split", "appendix-inert", "index-p10", "remark-pattern", "exact-order",
          "divisor-distribution", "trace-invariance", "duality-pairing", "fm-annihilation",
          "nm-unit", "split-iso", "hermit-decompose", "of-points", "gsp6-stabilizer", "oracle-g1"})
        CHECK(find_check(name) != nullptr);
}

TEST_CASE("config parsing") {
    RunConfig cfg = parse_config_text(
        "seed = 7\n"
        "cap = 1000\n"
        "minpoly.-3 = 1, -1\n"
        "[exact-order]\n"
        "g = 1, 2\n"
        "p = 2\n"
        "m = 1\n");
    CHECK(cfg.seed == 7);
    CHECK(cfg.cap == 1000);
    CHECK(cfg.field_minpoly.at(-3) == std::make_pair(int64_t{1}, int64_t{-1}));
    REQUIRE(cfg.checks.size() == 1);
    CHECK(cfg.checks[0].first == "exact-order");
    CHECK(cfg.checks[0].second.size() == 2);  // cartesian over g
    CHECK_THROWS_AS((void)parse_config_text("[not-a-check]\np = 2\n"), Error);
    CHECK_THROWS_AS((void)run_checks(RunConfig{}), Error);  // empty check list
}

TEST_CASE("run produces a bundle with exit status semantics") {
    RunConfig cfg;
    cfg.checks.emplace_back("nm-unit", std::vector<ParamMap>{{{"p", "7"}, {"g", "2"}, {"m", "3"}}});
    RunResult res = run_checks(cfg);
    CHECK(res.exit_code == 0);
    REQUIRE(res.bundle["reports"].size() == 1);
    CHECK(res.bundle["reports"][0]["pass"] == true);
    CHECK(res.bundle["reports"][0]["artifact_version"] == kArtifactVersion);
}

TEST_CASE("infeasible caps signal status 2") {
    RunConfig cfg;
    cfg.checks.emplace_back("exact-order",
                            std::vector<ParamMap>{{{"g", "2"}, {"p", "2"}, {"m", "1"}, {"cap", "10"}}});
    RunResult res = run_checks(cfg);
    CHECK(res.exit_code == 2);
    CHECK(res.bundle["reports"][0]["status"] == 2);
}

TEST_CASE("determinism modulo timing fields") {
    RunConfig cfg;
    cfg.seed = 123;
    cfg.checks.emplace_back("duality-pairing", std::vector<ParamMap>{});
    auto strip = [](json b) {
        for (auto& r : b["reports"]) r.erase("elapsed_ms");
        return b;
    };
    RunResult a = run_checks(cfg);
    RunResult b = run_checks(cfg);
    CHECK(strip(a.bundle) == strip(b.bundle));
}

TEST_CASE("failing check yields exit code 1") {
    RunConfig cfg;
    // the injected-fault variant of the remark-pattern check must FAIL
    cfg.checks.emplace_back("remark-pattern",
                            std::vector<ParamMap>{{{"p", "2"}, {"m", "1"}, {"n", "4"},
                                                   {"samples", "500"}, {"fault", "weaken-entry-2-1"}}});
    RunResult res = run_checks(cfg);
    CHECK(res.exit_code == 1);
    CHECK(res.bundle["reports"][0]["pass"] == false);
}
