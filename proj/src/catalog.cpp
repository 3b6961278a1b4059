#include <regulus/catalog.hpp>

#include <regulus/catalog_data.hpp>

#include <algorithm>
#include <fstream>
#include <set>

namespace regulus {

DepthPolicy DepthPolicy::named(std::string_view name)
{
    if (name == "quick")
        return quick();
    if (name == "full")
        return full();
    throw UsageError("unknown depth policy '" + std::string(name) + "' (expected quick or full)");
}

const Catalog& Catalog::builtin()
{
    static const Catalog c = from_json(nlohmann::json::parse(detail::builtin_catalog_json));
    return c;
}

Catalog Catalog::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open catalog " + path.string());
    try {
        return from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("catalog " + path.string() + ": " + e.what());
    }
}

Catalog Catalog::from_json(const nlohmann::json& j)
{
    if (!j.contains("claims") || !j["claims"].is_array())
        throw UsageError("catalog: missing 'claims' array");
    Catalog c;
    std::set<std::string> seen;
    for (const auto& item : j["claims"]) {
        ClaimEntry e;
        e.id = item.at("id").get<std::string>();
        e.group = item.value("group", e.id.substr(0, e.id.find('.')));
        e.statement = item.value("statement", "");
        e.driver = item.at("driver").get<std::string>();
        if (item.contains("params"))
            e.params = item["params"];
        if (!seen.insert(e.id).second)
            throw UsageError("catalog: duplicate id '" + e.id + "'");
        c.claims_.push_back(std::move(e));
    }
    std::sort(c.claims_.begin(), c.claims_.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return c;
}

const ClaimEntry* Catalog::find(std::string_view id) const
{
    auto it = std::find_if(claims_.begin(), claims_.end(), [&](const auto& e) { return e.id == id; });
    return it == claims_.end() ? nullptr : &*it;
}

std::vector<ClaimEntry> Catalog::select(const std::vector<std::string>& names) const
{
    std::set<std::string> chosen;
    for (const auto& name : names) {
        if (name == "all") {
            for (const auto& e : claims_)
                chosen.insert(e.id);
            continue;
        }
        if (find(name)) {
            chosen.insert(name);
            continue;
        }
        bool group = false;
        for (const auto& e : claims_)
            if (e.group == name) {
                chosen.insert(e.id);
                group = true;
            }
        if (!group)
            throw UsageError("unknown claim id '" + name + "'");
    }
    std::vector<ClaimEntry> out;
    for (const auto& e : claims_)
        if (chosen.count(e.id))
            out.push_back(e);
    return out;
}

} // namespace regulus
