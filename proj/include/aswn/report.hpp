#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "aswn/polygon.hpp"

namespace aswn {

using Json = nlohmann::ordered_json;

struct CheckResult {
    std::string name;
    std::string status; // pass | fail | skipped
    Json witness;       // always concrete on fail
};

// Per-instance verification report, deterministic modulo timing_ms.
struct Report {
    Json instance;
    std::optional<Polygon> np;        // Newton polygon (p-adic of L, or stable T-adic)
    std::optional<Polygon> hp_scaled; // Hodge bound in the same units
    std::optional<Polygon> up_scaled; // upper bound in the same units
    SlopeMultiset slopes;
    std::vector<CheckResult> checks;
    int M = 0;
    int K_tau = -1;
    int n_rows = -1;
    long timing_ms = 0;

    void add(const std::string& name, bool ok, Json witness = Json::object());
    void add_skipped(const std::string& name, Json witness = Json::object());
    bool all_pass() const; // checks named info_* do not count

    Json to_json() const;
};

Json json_polygon(const Polygon& P);
Json json_slopes(const SlopeMultiset& S);

} // namespace aswn
