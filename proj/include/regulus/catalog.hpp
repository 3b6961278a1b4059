#pragma once

// The claim registry: each entry names a driver and its parameters, so a
// new congruence is a data change. A built-in copy of data/claims.json is
// compiled into the library.

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace regulus {

/// Bad input from the caller: unknown claim id, malformed catalog, refused parameters.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DepthPolicy {
    std::string name;      ///< quick, full or custom
    std::size_t max_depth; ///< deepest generating-series expansion allowed

    static DepthPolicy quick() { return {"quick", 100000}; }
    static DepthPolicy full() { return {"full", 8000000}; }
    static DepthPolicy custom(std::size_t depth) { return {"custom", depth}; }
    static DepthPolicy named(std::string_view name);

    bool is_quick() const noexcept { return name == "quick"; }
};

struct ClaimEntry {
    std::string id;
    std::string group;
    std::string statement;
    std::string driver;
    nlohmann::json params = nlohmann::json::object();
};

class Catalog {
public:
    static const Catalog& builtin();
    static Catalog load(const std::filesystem::path& path);
    static Catalog from_json(const nlohmann::json& j);

    /// Sorted by id.
    const std::vector<ClaimEntry>& claims() const noexcept { return claims_; }
    const ClaimEntry* find(std::string_view id) const;

    /// Resolve ids, group names or "all"; throws UsageError on anything unknown.
    std::vector<ClaimEntry> select(const std::vector<std::string>& names) const;

private:
    std::vector<ClaimEntry> claims_;
};

} // namespace regulus
