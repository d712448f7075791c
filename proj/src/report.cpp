#include "aswn/report.hpp"

namespace aswn {

Json json_polygon(const Polygon& P) {
    Json arr = Json::array();
    for (const auto& v : P.v) arr.push_back(Json::array({v.x, rat_to_string(v.y)}));
    return arr;
}

Json json_slopes(const SlopeMultiset& S) {
    Json arr = Json::array();
    for (const auto& s : S.s) arr.push_back(rat_to_string(s));
    return arr;
}

void Report::add(const std::string& name, bool ok, Json witness) {
    checks.push_back({name, ok ? "pass" : "fail", std::move(witness)});
}

void Report::add_skipped(const std::string& name, Json witness) {
    checks.push_back({name, "skipped", std::move(witness)});
}

bool Report::all_pass() const {
    for (const auto& c : checks) {
        if (c.status == "fail" && c.name.rfind("info_", 0) != 0) return false;
    }
    return true;
}

Json Report::to_json() const {
    Json j;
    j["instance"] = instance;
    Json polys = Json::object();
    polys["np"] = np ? json_polygon(*np) : Json();
    polys["hp_scaled"] = hp_scaled ? json_polygon(*hp_scaled) : Json();
    polys["up_scaled"] = up_scaled ? json_polygon(*up_scaled) : Json();
    j["polygons"] = polys;
    j["slopes"] = json_slopes(slopes);
    Json cs = Json::array();
    for (const auto& c : checks) {
        Json e;
        e["name"] = c.name;
        e["status"] = c.status;
        e["witness"] = c.witness;
        cs.push_back(e);
    }
    j["checks"] = cs;
    Json prec;
    prec["M"] = M;
    prec["K_tau"] = K_tau;
    prec["n_rows"] = n_rows;
    j["precision"] = prec;
    j["timing_ms"] = timing_ms;
    return j;
}

} // namespace aswn
