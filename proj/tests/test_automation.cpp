#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "s2c/s2c.hpp"
#include "support/generators.hpp"
#include "support/paths.hpp"

using namespace s2c;

namespace {

ActivityCatalog singleton_catalog(AutomationLevel level, PipelineStage stage,
                                  const std::string& id = "SM-t1") {
    ActivityCatalog catalog;
    catalog.standard_id = "ONE";
    catalog.version = "1";
    catalog.practices = {{"SM", "Security management"}, {"SI", "Secure implementation"}};
    Activity act;
    act.id = id;
    act.practice = id.substr(0, id.find('-'));
    act.requirement = act.practice + "-1";
    act.name = "only";
    act.automation = level;
    act.stages = {stage};
    catalog.activities = {act};
    return catalog;
}

const AutomationSummary& global_of(const std::vector<AutomationSummary>& summaries) {
    REQUIRE(summaries.back().scope == "global");
    return summaries.back();
}

}  // namespace

TEST_CASE("half-up rounding in exact integer arithmetic") {
    CHECK(half_up_percent(61, 160) == 38);   // 38.125
    CHECK(half_up_percent(14, 160) == 9);    // 8.75
    CHECK(half_up_percent(22, 160) == 14);   // 13.75
    CHECK(half_up_percent(13, 160) == 8);    // 8.125
    CHECK(half_up_percent(50, 160) == 31);   // 31.25
    CHECK(half_up_percent(99, 160) == 62);   // 61.875
    CHECK(half_up_percent(1, 8) == 13);      // 12.5 rounds up
    CHECK(half_up_percent(0, 7) == 0);
    CHECK(half_up_percent(7, 7) == 100);
}

TEST_CASE("fixture-160 reproduces the published automation statistics") {
    ActivityCatalog catalog = load_catalog(s2c::testing::data_path("fixture-160.json"));
    REQUIRE(catalog.activities.size() == 160);

    std::vector<AutomationSummary> summaries = summarize(catalog);
    REQUIRE(summaries.size() == 9);  // eight practices plus global

    const AutomationSummary& global = global_of(summaries);
    CHECK(global.total == 160);
    CHECK(global.count(AutomationLevel::HumanTask) == 61);
    CHECK(global.count(AutomationLevel::Transparency) == 14);
    CHECK(global.count(AutomationLevel::PartialAutomation) == 22);
    CHECK(global.count(AutomationLevel::ToolPossible) == 13);
    CHECK(global.count(AutomationLevel::Complete) == 50);

    CHECK(global.percent(AutomationLevel::HumanTask) == 38);
    CHECK(global.percent(AutomationLevel::Transparency) == 9);
    CHECK(global.percent(AutomationLevel::PartialAutomation) == 14);
    CHECK(global.percent(AutomationLevel::ToolPossible) == 8);
    CHECK(global.percent(AutomationLevel::Complete) == 31);

    for (const AutomationSummary& summary : summaries) {
        if (summary.scope != "SG") continue;
        CHECK(summary.percent(AutomationLevel::HumanTask) == 100);
        CHECK(summary.count(AutomationLevel::HumanTask) == summary.total);
    }

    CHECK(automation_potential(global) == 62);
}

TEST_CASE("per-practice counts add up to the global row") {
    for (const char* fixture : {"fixture-160.json", "iec62443-4-1-sample.json"}) {
        ActivityCatalog catalog = load_catalog(s2c::testing::data_path(fixture));
        std::vector<AutomationSummary> summaries = summarize(catalog);
        const AutomationSummary& global = global_of(summaries);
        std::array<int, 5> sums{};
        for (const AutomationSummary& summary : summaries) {
            if (summary.scope == "global") continue;
            for (std::size_t i = 0; i < sums.size(); ++i) sums[i] += summary.counts[i];
        }
        CHECK(sums == global.counts);
    }
}

TEST_CASE("singleton catalogs produce degenerate percentages") {
    std::vector<AutomationSummary> summaries =
        summarize(singleton_catalog(AutomationLevel::Complete, PipelineStage::Build));
    const AutomationSummary& global = global_of(summaries);
    CHECK(global.percent(AutomationLevel::Complete) == 100);
    CHECK(global.percent(AutomationLevel::HumanTask) == 0);
    CHECK(automation_potential(global) == 100);

    std::vector<AutomationSummary> manual =
        summarize(singleton_catalog(AutomationLevel::HumanTask, PipelineStage::Build));
    CHECK(automation_potential(global_of(manual)) == 0);
}

TEST_CASE("sample catalog SG practice is fully manual") {
    ActivityCatalog catalog = load_catalog(s2c::testing::data_path("iec62443-4-1-sample.json"));
    for (const AutomationSummary& summary : summarize(catalog)) {
        if (summary.scope != "SG") continue;
        CHECK(summary.percent(AutomationLevel::HumanTask) == 100);
    }
}

TEST_CASE("unclassified activities block statistics with their ids") {
    ActivityCatalog catalog = singleton_catalog(AutomationLevel::Complete, PipelineStage::Code);
    catalog.activities[0].automation = std::nullopt;
    try {
        summarize(catalog);
        FAIL("expected UnclassifiedError");
    } catch (const UnclassifiedError& e) {
        CHECK(e.ids() == std::vector<std::string>{"SM-t1"});
        CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("SM-t1"));
    }
}

TEST_CASE("summary invariants hold on random catalogs") {
    std::mt19937 rng(8);
    for (int i = 0; i < 60; ++i) {
        ActivityCatalog catalog = s2c::testing::random_catalog(rng);
        std::vector<AutomationSummary> summaries = summarize(catalog);
        for (const AutomationSummary& summary : summaries) {
            REQUIRE(summary.total > 0);
            int count_sum = 0, percent_sum = 0;
            for (std::size_t k = 0; k < summary.counts.size(); ++k) {
                count_sum += summary.counts[k];
                percent_sum += summary.percents[k];
                CHECK(summary.percents[k] >= 0);
                CHECK(summary.percents[k] <= 100);
            }
            CHECK(count_sum == summary.total);
            CHECK(std::abs(percent_sum - 100) <= 2);  // rounding slack

            int potential = automation_potential(summary);
            int identity = 100 - summary.percent(AutomationLevel::HumanTask);
            CHECK(std::abs(potential - identity) <= 1);
        }
    }
}

TEST_CASE("roadmap orders by automation level, stage, then id") {
    ActivityCatalog catalog;
    catalog.standard_id = "RM";
    catalog.version = "1";
    catalog.practices = {{"SM", "m"}};
    auto add = [&](const std::string& id, AutomationLevel level, PipelineStage stage) {
        Activity act;
        act.id = id;
        act.practice = "SM";
        act.requirement = "SM-1";
        act.name = id;
        act.automation = level;
        act.stages = {stage};
        catalog.activities.push_back(act);
    };
    add("SM-t1", AutomationLevel::Complete, PipelineStage::Build);
    add("SM-t2", AutomationLevel::HumanTask, PipelineStage::Plan);
    add("SM-t3", AutomationLevel::PartialAutomation, PipelineStage::Plan);
    add("SM-t4", AutomationLevel::Complete, PipelineStage::Plan);
    add("SM-t5", AutomationLevel::Transparency, PipelineStage::Plan);
    add("SM-t6", AutomationLevel::ToolPossible, PipelineStage::Plan);

    std::vector<RoadmapEntry> entries = roadmap(catalog);
    std::vector<std::string> order;
    for (const RoadmapEntry& entry : entries) order.push_back(entry.activity_id);
    // complete first (Plan-stage one ahead of the Build-stage one), then
    // partial, transparency, tool-possible, human task
    CHECK(order == std::vector<std::string>{"SM-t4", "SM-t1", "SM-t3", "SM-t5", "SM-t6",
                                            "SM-t2"});
    for (std::size_t i = 0; i < entries.size(); ++i) {
        CHECK(entries[i].rank == static_cast<int>(i) + 1);
        CHECK(entries[i].rationale == roadmap_rationale(entries[i].automation));
    }

    SECTION("excluding everything empties the roadmap") {
        std::set<std::string> all;
        for (const Activity& act : catalog.activities) all.insert(act.id);
        CHECK(roadmap(catalog, all).empty());
    }
    SECTION("id breaks ties within level and stage") {
        add("SM-t7", AutomationLevel::Complete, PipelineStage::Plan);
        std::vector<RoadmapEntry> again = roadmap(catalog);
        CHECK(again[0].activity_id == "SM-t4");
        CHECK(again[1].activity_id == "SM-t7");
    }
}

TEST_CASE("roadmap is a permutation of the non-excluded ids") {
    std::mt19937 rng(55);
    for (int i = 0; i < 40; ++i) {
        ActivityCatalog catalog = s2c::testing::random_catalog(rng);
        std::set<std::string> exclude;
        for (const Activity& act : catalog.activities)
            if (s2c::testing::coin(rng, 30)) exclude.insert(act.id);

        std::vector<RoadmapEntry> entries = roadmap(catalog, exclude);
        std::set<std::string> covered;
        int expected_rank = 1;
        for (const RoadmapEntry& entry : entries) {
            CHECK(entry.rank == expected_rank++);
            CHECK(exclude.count(entry.activity_id) == 0);
            covered.insert(entry.activity_id);
        }
        CHECK(covered.size() == entries.size());
        CHECK(covered.size() == catalog.activities.size() - exclude.size());
    }
}

TEST_CASE("stats exports are shaped for machines and humans") {
    ActivityCatalog catalog = load_catalog(s2c::testing::data_path("fixture-160.json"));
    std::vector<AutomationSummary> summaries = summarize(catalog);

    json j = summaries_to_json(summaries);
    CHECK(j["schema"] == "s2c-stats/1");
    REQUIRE(j["summaries"].size() == 9);
    CHECK(j["summaries"].back()["scope"] == "global");
    CHECK(j["summaries"].back()["percents"]["human-task"] == 38);
    CHECK(j["summaries"].back()["automation_potential_percent"] == 62);

    std::string text = summaries_to_text(summaries);
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("global"));
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("61 (38%)"));
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("50 (31%)"));
}
