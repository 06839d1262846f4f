#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "s2c/s2c.hpp"
#include "support/generators.hpp"
#include "support/paths.hpp"

using namespace s2c;

namespace {

ActivityCatalog two_step_catalog() {
    ActivityCatalog catalog;
    catalog.standard_id = "MINI";
    catalog.version = "1";
    catalog.practices = {{"SM", "Security management"}};
    catalog.artifacts = {{"x", RepositoryKind::Documentation, ""}};

    Activity a;
    a.id = "SM-t1";
    a.practice = "SM";
    a.requirement = "SM-1";
    a.name = "produce";
    a.outputs = {"x"};
    a.automation = AutomationLevel::HumanTask;
    a.stages = {PipelineStage::Build};

    Activity b = a;
    b.id = "SM-t2";
    b.name = "consume";
    b.outputs = {};
    b.inputs = {"x"};
    b.stages = {PipelineStage::Test};

    catalog.activities = {a, b};
    return catalog;
}

/// Brute-force edge oracle: the full producer x consumer x artifact
/// cross product, kept deliberately independent of build_graph.
std::set<GraphEdge> edge_oracle(const ActivityCatalog& catalog) {
    std::set<GraphEdge> edges;
    for (const Activity& producer : catalog.activities)
        for (const Activity& consumer : catalog.activities)
            for (const std::string& artifact : producer.outputs)
                if (consumer.inputs.count(artifact))
                    edges.insert({producer.id, consumer.id, artifact});
    return edges;
}

int count_severity(const std::vector<ValidationFinding>& findings, Severity severity) {
    int n = 0;
    for (const ValidationFinding& finding : findings) n += finding.severity == severity;
    return n;
}

}  // namespace

TEST_CASE("a single producer/consumer pair yields one edge and no findings") {
    OrchestrationGraph graph = build_graph(two_step_catalog());
    REQUIRE(graph.edges.size() == 1);
    CHECK(graph.edges[0] == GraphEdge{"SM-t1", "SM-t2", "x"});
    CHECK(graph.findings.empty());
    CHECK(graph.nodes == std::vector<std::string>{"SM-t1", "SM-t2"});
}

TEST_CASE("dangling inputs warn unless declared external") {
    ActivityCatalog catalog = two_step_catalog();
    catalog.artifacts.push_back({"threat-model", RepositoryKind::Documentation, ""});
    catalog.activities[1].inputs.insert("threat-model");

    SECTION("not declared") {
        OrchestrationGraph graph = build_graph(catalog);
        REQUIRE(graph.findings.size() == 1);
        CHECK(graph.findings[0].code == "DANGLING_INPUT");
        CHECK(graph.findings[0].severity == Severity::Warning);
        CHECK(graph.findings[0].subject == "threat-model");
        CHECK(graph.external_inputs.empty());
    }
    SECTION("declared external") {
        OrchestrationGraph graph = build_graph(catalog, {"threat-model"});
        CHECK(graph.findings.empty());
        CHECK(graph.external_inputs == std::set<std::string>{"threat-model"});
    }
    SECTION("declaration of produced artifacts has no effect") {
        OrchestrationGraph graph = build_graph(catalog, {"threat-model", "x"});
        CHECK(graph.external_inputs == std::set<std::string>{"threat-model"});
    }
}

TEST_CASE("terminal outputs are informational") {
    ActivityCatalog catalog = two_step_catalog();
    catalog.artifacts.push_back({"orphan", RepositoryKind::Analytics, ""});
    catalog.activities[0].outputs.insert("orphan");
    OrchestrationGraph graph = build_graph(catalog);
    REQUIRE(graph.findings.size() == 1);
    CHECK(graph.findings[0].code == "TERMINAL_OUTPUT");
    CHECK(graph.findings[0].severity == Severity::Info);
}

TEST_CASE("the sample catalog has the issue-to-requirements feedback cycle") {
    ActivityCatalog catalog = load_catalog(s2c::testing::data_path("iec62443-4-1-sample.json"));
    std::set<std::string> external =
        load_external_inputs(s2c::testing::data_path("sample-external-inputs.json"));
    OrchestrationGraph graph = build_graph(catalog, external);

    std::vector<ValidationFinding> cycles;
    for (const ValidationFinding& finding : graph.findings)
        if (finding.code == "CYCLE") cycles.push_back(finding);
    REQUIRE(cycles.size() == 1);
    CHECK(cycles[0].severity == Severity::Info);
    CHECK(cycles[0].subject == "DM-t1");
    CHECK_THAT(cycles[0].message, Catch::Matchers::ContainsSubstring("SR-t3"));

    CHECK(count_severity(graph.findings, Severity::Warning) == 0);
    CHECK(count_severity(graph.findings, Severity::Error) == 0);

    // the Monitor -> Plan feedback edge is exempt from stage-order checks
    CHECK(check_stage_consistency(graph, catalog).empty());
}

TEST_CASE("stage order findings") {
    ActivityCatalog catalog = two_step_catalog();

    SECTION("forward flow is silent") {
        OrchestrationGraph graph = build_graph(catalog);
        CHECK(check_stage_consistency(graph, catalog).empty());
    }
    SECTION("backward flow off-cycle warns") {
        catalog.activities[0].stages = {PipelineStage::Deploy};
        catalog.activities[1].stages = {PipelineStage::Code};
        OrchestrationGraph graph = build_graph(catalog);
        std::vector<ValidationFinding> findings = check_stage_consistency(graph, catalog);
        REQUIRE(findings.size() == 1);
        CHECK(findings[0].code == "STAGE_ORDER");
        CHECK(findings[0].severity == Severity::Warning);
        CHECK(findings[0].subject == "SM-t1");
    }
    SECTION("multi-stage activities compare on their earliest stage") {
        catalog.activities[0].stages = {PipelineStage::Deploy, PipelineStage::Plan};
        catalog.activities[1].stages = {PipelineStage::Code};
        OrchestrationGraph graph = build_graph(catalog);
        CHECK(check_stage_consistency(graph, catalog).empty());
    }
    SECTION("backward flow on a cycle is exempt") {
        // close the loop: consumer feeds the producer again
        catalog.artifacts.push_back({"loop", RepositoryKind::Analytics, ""});
        catalog.activities[0].stages = {PipelineStage::Monitor};
        catalog.activities[1].stages = {PipelineStage::Plan};
        catalog.activities[1].outputs.insert("loop");
        catalog.activities[0].inputs.insert("loop");
        OrchestrationGraph graph = build_graph(catalog);
        CHECK(check_stage_consistency(graph, catalog).empty());
        bool has_cycle = false;
        for (const ValidationFinding& finding : graph.findings)
            has_cycle |= finding.code == "CYCLE";
        CHECK(has_cycle);
    }
}

TEST_CASE("linear chains yield n-1 edges and no warnings") {
    for (int n : {1, 2, 5, 23}) {
        ActivityCatalog catalog = s2c::testing::chain_catalog(n);
        OrchestrationGraph graph = build_graph(catalog, {"chain-0"});
        CHECK(graph.edges.size() == static_cast<std::size_t>(n - 1));
        CHECK(count_severity(graph.findings, Severity::Warning) == 0);
        CHECK(count_severity(graph.findings, Severity::Error) == 0);
    }
}

TEST_CASE("edge set equals the brute-force oracle on random catalogs") {
    std::mt19937 rng(31337);
    for (int i = 0; i < 60; ++i) {
        ActivityCatalog catalog = s2c::testing::random_catalog(rng);
        OrchestrationGraph graph = build_graph(catalog);
        std::set<GraphEdge> actual(graph.edges.begin(), graph.edges.end());
        CHECK(actual.size() == graph.edges.size());  // no duplicate edges
        CHECK(actual == edge_oracle(catalog));

        // reproducibility
        OrchestrationGraph again = build_graph(catalog);
        CHECK(again.edges == graph.edges);
        CHECK(again.findings == graph.findings);
    }
}

TEST_CASE("removing an artifact from the producer removes exactly its edges") {
    std::mt19937 rng(1701);
    for (int i = 0; i < 25; ++i) {
        ActivityCatalog catalog = s2c::testing::random_catalog(rng);
        OrchestrationGraph before = build_graph(catalog);
        if (before.edges.empty()) continue;

        const GraphEdge& victim =
            before.edges[static_cast<std::size_t>(s2c::testing::pick(
                rng, static_cast<int>(before.edges.size())))];
        for (Activity& act : catalog.activities)
            if (act.id == victim.producer) act.outputs.erase(victim.artifact);

        OrchestrationGraph after = build_graph(catalog);
        std::set<GraphEdge> expected;
        for (const GraphEdge& edge : before.edges)
            if (!(edge.producer == victim.producer && edge.artifact == victim.artifact))
                expected.insert(edge);
        CHECK(std::set<GraphEdge>(after.edges.begin(), after.edges.end()) == expected);
    }
}

TEST_CASE("findings export as one JSON object per line") {
    ActivityCatalog catalog = two_step_catalog();
    catalog.artifacts.push_back({"threat-model", RepositoryKind::Documentation, ""});
    catalog.activities[1].inputs.insert("threat-model");
    OrchestrationGraph graph = build_graph(catalog);

    std::string jsonl = findings_to_jsonl(graph.findings);
    REQUIRE(!jsonl.empty());
    std::size_t lines = 0, start = 0;
    while (start < jsonl.size()) {
        std::size_t end = jsonl.find('\n', start);
        REQUIRE(end != std::string::npos);
        json parsed = json::parse(jsonl.substr(start, end - start));
        CHECK(parsed.contains("severity"));
        CHECK(parsed.contains("code"));
        CHECK(parsed.contains("subject"));
        CHECK(parsed.contains("message"));
        ++lines;
        start = end + 1;
    }
    CHECK(lines == graph.findings.size());
}

TEST_CASE("external inputs sidecar loads and validates") {
    std::set<std::string> externals =
        load_external_inputs(s2c::testing::data_path("sample-external-inputs.json"));
    CHECK(externals.count("customer-need") == 1);
    CHECK(externals.size() == 6);
}
