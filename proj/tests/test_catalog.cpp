#include <doctest.h>

#include <regulus/catalog.hpp>
#include <regulus/verify.hpp>

#include <cstdio>
#include <fstream>

using namespace regulus;

TEST_CASE("built-in catalog")
{
    const Catalog c = Catalog::builtin();
    CHECK(c.claims().size() >= 50);
    CHECK(std::is_sorted(c.claims().begin(), c.claims().end(),
                         [](const auto& a, const auto& b) { return a.id < b.id; }));
    for (const char* id : {"thm1.p53", "thm1.p71", "thm1.p73", "thm1.p89", "thm2.base", "thm2.family"})
        CHECK(c.find(id) != nullptr);
    CHECK(c.find("thm1.p53")->group == "thm1");
    CHECK(c.find("nope") == nullptr);
}

TEST_CASE("selection by id, group and all")
{
    const Catalog c = Catalog::builtin();
    CHECK(c.select({"all"}).size() == c.claims().size());
    const auto thm1 = c.select({"thm1"});
    CHECK(thm1.size() == 4);
    const auto mixed = c.select({"thm1.p53", "thm1", "sturm.w63N2299"});
    CHECK(mixed.size() == 5);
    CHECK(mixed.front().id == "sturm.w63N2299");
    CHECK_THROWS_AS(c.select({"thm9.p1"}), UsageError);
}

TEST_CASE("every built-in claim dispatches")
{
    // a depth of 1 exercises every driver's parameters without heavy work
    for (const auto& e : Catalog::builtin().claims()) {
        CAPTURE(e.id);
        if (e.driver == "ramanujan" || e.driver == "lift" || e.driver == "b9_identity" || e.driver == "dissection")
            continue;
        CHECK_NOTHROW(run_claim(e, DepthPolicy::custom(1)));
    }
}

TEST_CASE("depth policies")
{
    CHECK(DepthPolicy::named("quick").max_depth == 100000);
    CHECK(DepthPolicy::named("full").max_depth == 8000000);
    CHECK(DepthPolicy::custom(7).name == "custom");
    CHECK_THROWS_AS(DepthPolicy::named("deep"), UsageError);
}

TEST_CASE("catalog from JSON")
{
    const auto j = nlohmann::json::parse(R"({"claims": [
        {"id": "b.two", "driver": "sturm", "params": {"weight": 3, "level": 1431, "expected": 486}},
        {"id": "a.one", "group": "custom", "driver": "sturm", "params": {"weight": 63, "level": 2299, "expected": 13860}}
    ]})");
    const Catalog c = Catalog::from_json(j);
    REQUIRE(c.claims().size() == 2);
    CHECK(c.claims()[0].id == "a.one");
    CHECK(c.claims()[0].group == "custom");
    CHECK(c.claims()[1].group == "b");
    CHECK(c.select({"custom"}).size() == 1);

    CHECK_THROWS_AS(Catalog::from_json(nlohmann::json::object()), UsageError);
    const auto dup = nlohmann::json::parse(R"({"claims": [{"id": "a", "driver": "x"}, {"id": "a", "driver": "y"}]})");
    CHECK_THROWS_AS(Catalog::from_json(dup), UsageError);
}

TEST_CASE("catalog files")
{
    const std::string path = "regulus_catalog_test.json";
    {
        std::ofstream out(path);
        out << R"({"claims": [{"id": "s.one", "driver": "sturm", "params": {"weight": 5, "level": 1971, "expected": 1110}}]})";
    }
    const Catalog c = Catalog::load(path);
    CHECK(run_claim(c.claims()[0], DepthPolicy::quick()).established());
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    CHECK_THROWS_AS(Catalog::load(path), UsageError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(Catalog::load("/nonexistent/catalog.json"), UsageError);
}
