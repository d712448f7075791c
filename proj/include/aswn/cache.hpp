#pragma once

#include <optional>
#include <string>

namespace aswn {

// One JSON file per key under the cache directory, named by a 64-bit FNV-1a
// hash of the canonical key string. Files carry the full key and are checked
// on load. Writes go through a temp file and rename.
class ExpSumCache {
public:
    explicit ExpSumCache(std::string dir);

    std::optional<std::string> load(const std::string& key) const;
    void store(const std::string& key, const std::string& payload) const;

    const std::string& dir() const { return dir_; }
    static std::string hash_hex(const std::string& key);

private:
    std::string dir_;
};

} // namespace aswn
