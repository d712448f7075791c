#include "aswn/cache.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "aswn/errors.hpp"

namespace fs = std::filesystem;

namespace aswn {

ExpSumCache::ExpSumCache(std::string dir) : dir_(std::move(dir)) {
    fs::create_directories(dir_);
}

std::string ExpSumCache::hash_hex(const std::string& key) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : key) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::optional<std::string> ExpSumCache::load(const std::string& key) const {
    fs::path file = fs::path(dir_) / ("expsum_" + hash_hex(key) + ".json");
    std::ifstream in(file);
    if (!in.good()) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        auto j = nlohmann::json::parse(ss.str());
        if (j.at("key").get<std::string>() != key) return std::nullopt; // hash collision
        return j.at("payload").get<std::string>();
    } catch (...) {
        return std::nullopt;
    }
}

void ExpSumCache::store(const std::string& key, const std::string& payload) const {
    nlohmann::ordered_json j;
    j["key"] = key;
    j["payload"] = payload;
    fs::path file = fs::path(dir_) / ("expsum_" + hash_hex(key) + ".json");
    fs::path tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out.good()) throw Error("cache: cannot write " + tmp.string());
        out << j.dump();
    }
    fs::rename(tmp, file);
}

} // namespace aswn
