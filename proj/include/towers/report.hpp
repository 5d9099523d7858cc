#pragma once

#include <chrono>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace towers {

using nlohmann::json;

inline constexpr const char* kArtifactVersion = "1.0.0";

/// Machine-readable result of one named check. pass <=> expected == computed and
/// no counterexamples; status 2 flags an infeasible/aborted run.
struct CheckReport {
    std::string name;
    json params = json::object();
    json expected;
    json computed;
    bool pass = false;
    int status = 0;  // 0 ran, 2 infeasible/aborted
    std::vector<std::string> counterexamples;
    uint64_t seed = 0;
    int64_t elapsed_ms = 0;
    std::vector<std::string> decision_log;

    void add_counterexample(const std::string& s) {
        if (counterexamples.size() < 20) counterexamples.push_back(s);
    }
    json to_json() const {
        return json{{"name", name},
                    {"params", params},
                    {"expected", expected},
                    {"computed", computed},
                    {"pass", pass},
                    {"status", status},
                    {"counterexamples", counterexamples},
                    {"seed", seed},
                    {"elapsed_ms", elapsed_ms},
                    {"artifact_version", kArtifactVersion},
                    {"decision_log", decision_log}};
    }
};

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    int64_t ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace towers
