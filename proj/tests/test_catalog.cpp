#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <filesystem>
#include <random>

#include "s2c/s2c.hpp"
#include "support/generators.hpp"
#include "support/paths.hpp"

using namespace s2c;
using Catch::Matchers::ContainsSubstring;

namespace {

ActivityCatalog tiny_catalog() {
    ActivityCatalog catalog;
    catalog.standard_id = "TINY";
    catalog.version = "1";
    catalog.practices = {{"SI", "Secure implementation"}};
    catalog.artifacts = {{"code", RepositoryKind::CodeBase, ""},
                         {"report", RepositoryKind::TestRepo, ""}};
    catalog.tools = {{"scanner", {"sast"}, {}, true, true}};
    Activity act;
    act.id = "SI-t1";
    act.practice = "SI";
    act.requirement = "SI-1";
    act.name = "Scan";
    act.inputs = {"code"};
    act.outputs = {"report"};
    act.automation = AutomationLevel::Complete;
    act.tools = {"scanner"};
    act.stages = {PipelineStage::Build};
    catalog.activities = {act};
    return catalog;
}

std::string temp_file(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("enum names round-trip and cover the aliases") {
    for (AutomationLevel level : kAutomationLevels)
        CHECK(parse_automation_level(to_string(level)) == level);
    for (PipelineStage stage : kPipelineStages)
        CHECK(parse_stage(to_string(stage)) == stage);
    for (RepositoryKind kind : kRepositoryKinds)
        CHECK(parse_repository_kind(to_string(kind)) == kind);

    CHECK(parse_stage("concept") == PipelineStage::Plan);
    CHECK_FALSE(parse_stage("qa").has_value());
    CHECK_FALSE(parse_automation_level("unclassified").has_value());
}

TEST_CASE("sample catalog loads with the expected shape") {
    ActivityCatalog catalog = load_catalog(s2c::testing::data_path("iec62443-4-1-sample.json"));
    CHECK(catalog.standard_id == "IEC-62443-4-1");
    CHECK(catalog.practices.size() == 8);
    CHECK(catalog.activities.size() >= 12);
    REQUIRE(catalog.find_activity("SI-t5") != nullptr);
    REQUIRE(catalog.find_activity("SI-t6") != nullptr);
    CHECK(catalog.find_activity("SI-t5")->requirement == "SI-1");
    CHECK(unclassified_ids(catalog).empty());

    // shipped sample is canonical: activities sorted by id
    ActivityCatalog sorted = canonicalized(catalog);
    CHECK(sorted == catalog);
}

TEST_CASE("catalog validation rejects structural violations") {
    SECTION("empty activities") {
        ActivityCatalog catalog = tiny_catalog();
        catalog.activities.clear();
        REQUIRE_THROWS_MATCHES(validate_catalog(catalog), SchemaError,
                               Catch::Matchers::MessageMatches(
                                   ContainsSubstring("Activity count > 0 violated")));
    }
    SECTION("duplicate activity id") {
        ActivityCatalog catalog = tiny_catalog();
        catalog.activities.push_back(catalog.activities[0]);
        REQUIRE_THROWS_AS(validate_catalog(catalog), SchemaError);
    }
    SECTION("id must carry the practice prefix and kind letter") {
        ActivityCatalog catalog = tiny_catalog();
        catalog.activities[0].id = "SI-x1";
        REQUIRE_THROWS_AS(validate_catalog(catalog), SchemaError);
        catalog.activities[0].id = "SM-t1";
        REQUIRE_THROWS_AS(validate_catalog(catalog), SchemaError);
        catalog.activities[0].id = "SI-t";
        REQUIRE_THROWS_AS(validate_catalog(catalog), SchemaError);
    }
    SECTION("practice codes must be uppercase alphanumeric") {
        ActivityCatalog catalog = tiny_catalog();
        catalog.practices[0].code = "si";
        catalog.activities[0].practice = "si";
        catalog.activities[0].id = "si-t1";
        REQUIRE_THROWS_AS(validate_catalog(catalog), SchemaError);
    }
    SECTION("non-empty stages required") {
        ActivityCatalog catalog = tiny_catalog();
        catalog.activities[0].stages.clear();
        REQUIRE_THROWS_AS(validate_catalog(catalog), SchemaError);
    }
    SECTION("human-task and tool-possible activities must not reference tools") {
        ActivityCatalog catalog = tiny_catalog();
        catalog.activities[0].automation = AutomationLevel::HumanTask;
        REQUIRE_THROWS_AS(validate_catalog(catalog), SchemaError);
        catalog.activities[0].automation = AutomationLevel::ToolPossible;
        REQUIRE_THROWS_AS(validate_catalog(catalog), SchemaError);
        catalog.activities[0].tools.clear();
        CHECK_NOTHROW(validate_catalog(catalog));
    }
}

TEST_CASE("unresolved names are collected into one ReferenceError") {
    ActivityCatalog catalog = tiny_catalog();
    catalog.activities[0].tools = {"unknown-scanner"};
    catalog.activities[0].inputs.insert("mystery-artifact");
    try {
        validate_catalog(catalog);
        FAIL("expected ReferenceError");
    } catch (const ReferenceError& e) {
        REQUIRE(e.offenders().size() == 2);
        CHECK_THAT(e.what(), ContainsSubstring("unknown-scanner"));
        CHECK_THAT(e.what(), ContainsSubstring("mystery-artifact"));
    }
}

TEST_CASE("load_catalog reports precise error classes") {
    SECTION("missing file") {
        REQUIRE_THROWS_AS(load_catalog(temp_file("does-not-exist-catalog.json")), IoError);
    }
    SECTION("malformed json carries a line location") {
        const std::string path = temp_file("broken-catalog.json");
        write_file(path, "{\n  \"schema\": \"s2c-catalog/1\",\n  garbage\n}\n");
        REQUIRE_THROWS_MATCHES(
            load_catalog(path), SchemaError,
            Catch::Matchers::MessageMatches(ContainsSubstring("line 3")));
    }
    SECTION("wrong schema tag") {
        REQUIRE_THROWS_AS(catalog_from_string(R"({"schema": "other/9"})"), SchemaError);
    }
    SECTION("unknown keys are rejected") {
        json j = catalog_to_json(tiny_catalog());
        j["surprise"] = 1;
        REQUIRE_THROWS_AS(catalog_from_json(j), SchemaError);
    }
    SECTION("unknown stage name, with location") {
        json j = catalog_to_json(tiny_catalog());
        j["activities"][0]["stages"] = {"qa"};
        try {
            catalog_from_json(j);
            FAIL("expected SchemaError");
        } catch (const SchemaError& e) {
            CHECK_THAT(e.location(), ContainsSubstring("activities[0].stages"));
        }
    }
    SECTION("concept alias maps to plan") {
        json j = catalog_to_json(tiny_catalog());
        j["activities"][0]["stages"] = {"concept"};
        ActivityCatalog catalog = catalog_from_json(j);
        CHECK(catalog.activities[0].stages == std::set<PipelineStage>{PipelineStage::Plan});
    }
    SECTION("unclassified sentinel survives a round trip") {
        json j = catalog_to_json(tiny_catalog());
        j["activities"][0]["automation"] = "unclassified";
        j["activities"][0]["tools"] = json::array();
        ActivityCatalog catalog = catalog_from_json(j);
        validate_catalog(catalog);
        CHECK(unclassified_ids(catalog) == std::vector<std::string>{"SI-t1"});
        CHECK(catalog_to_json(catalog)["activities"][0]["automation"] == "unclassified");
    }
}

TEST_CASE("save_catalog raises IoError on unwritable paths") {
    REQUIRE_THROWS_AS(save_catalog(tiny_catalog(), "/nonexistent-dir/sub/catalog.json"),
                      IoError);
}

TEST_CASE("shipped sample round-trips") {
    const std::string source = s2c::testing::data_path("iec62443-4-1-sample.json");
    ActivityCatalog catalog = load_catalog(source);

    const std::string copy = temp_file("sample-roundtrip.json");
    save_catalog(catalog, copy);
    ActivityCatalog reloaded = load_catalog(copy);
    CHECK(structurally_equal(catalog, reloaded));

    const std::string copy2 = temp_file("sample-roundtrip-2.json");
    save_catalog(reloaded, copy2);
    CHECK(read_file(copy) == read_file(copy2));
}

TEST_CASE("round-trip identity on random catalogs") {
    std::mt19937 rng(20260809);
    for (int i = 0; i < 60; ++i) {
        ActivityCatalog catalog = s2c::testing::random_catalog(rng);
        validate_catalog(catalog);

        std::string bytes = catalog_to_string(catalog);
        ActivityCatalog reloaded = catalog_from_string(bytes);
        CHECK(structurally_equal(catalog, reloaded));
        CHECK(catalog_to_string(reloaded) == bytes);
    }
}

TEST_CASE("activity order does not affect canonical bytes") {
    std::mt19937 rng(7);
    ActivityCatalog catalog = load_catalog(s2c::testing::data_path("iec62443-4-1-sample.json"));
    std::string canonical = catalog_to_string(catalog);
    for (int i = 0; i < 10; ++i) {
        ActivityCatalog shuffled = catalog;
        std::shuffle(shuffled.activities.begin(), shuffled.activities.end(), rng);
        CHECK(catalog_to_string(shuffled) == canonical);
        CHECK(structurally_equal(shuffled, catalog));
    }
}

TEST_CASE("query_activities filters conjunctively and sorts by id") {
    ActivityCatalog catalog = load_catalog(s2c::testing::data_path("iec62443-4-1-sample.json"));

    SECTION("empty filter returns everything in id order") {
        std::vector<Activity> all = query_activities(catalog, {});
        REQUIRE(all.size() == catalog.activities.size());
        CHECK(std::is_sorted(all.begin(), all.end(),
                             [](const Activity& a, const Activity& b) { return a.id < b.id; }));
    }
    SECTION("practice and requirement") {
        ActivityFilter filter;
        filter.practice = "SI";
        filter.requirement = "SI-1";
        std::vector<Activity> hits = query_activities(catalog, filter);
        std::vector<std::string> ids;
        for (const Activity& act : hits) ids.push_back(act.id);
        CHECK_THAT(ids, Catch::Matchers::Contains(std::string("SI-t5")));
        CHECK_THAT(ids, Catch::Matchers::Contains(std::string("SI-t6")));
        for (const Activity& act : hits) {
            CHECK(act.practice == "SI");
            CHECK(act.requirement == "SI-1");
        }
    }
    SECTION("no SG activity is completely automated") {
        ActivityFilter filter;
        filter.practice = "SG";
        filter.automation = AutomationLevel::Complete;
        CHECK(query_activities(catalog, filter).empty());
    }
    SECTION("stage filter") {
        ActivityFilter filter;
        filter.stage = PipelineStage::Release;
        for (const Activity& act : query_activities(catalog, filter))
            CHECK(act.stages.count(PipelineStage::Release) == 1);
    }
    SECTION("unknown practice code") {
        ActivityFilter filter;
        filter.practice = "ZZ";
        REQUIRE_THROWS_AS(query_activities(catalog, filter), FilterError);
    }
    SECTION("make_filter rejects unknown names") {
        REQUIRE_THROWS_AS(make_filter({}, std::string("qa"), {}, {}), FilterError);
        REQUIRE_THROWS_AS(make_filter({}, {}, std::string("automagic"), {}), FilterError);
        ActivityFilter filter = make_filter({}, std::string("concept"), {}, {});
        CHECK(filter.stage == PipelineStage::Plan);
    }
}

TEST_CASE("query results are subsets on random catalogs") {
    std::mt19937 rng(99);
    for (int i = 0; i < 20; ++i) {
        ActivityCatalog catalog = s2c::testing::random_catalog(rng);
        ActivityFilter filter;
        filter.practice = catalog.practices[0].code;
        if (s2c::testing::coin(rng, 50)) filter.stage = PipelineStage::Build;
        std::vector<Activity> hits = query_activities(catalog, filter);
        for (const Activity& act : hits)
            CHECK(catalog.find_activity(act.id) != nullptr);
        std::vector<Activity> again = query_activities(catalog, filter);
        CHECK(hits == again);
    }
}
