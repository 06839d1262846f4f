#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "s2c/catalog.hpp"
#include "s2c/catalog_io.hpp"
#include "s2c/util.hpp"

namespace s2c {

enum class Severity { Error, Warning, Info };

inline std::string_view to_string(Severity severity) {
    switch (severity) {
        case Severity::Error: return "error";
        case Severity::Warning: return "warning";
        case Severity::Info: return "info";
    }
    return "";
}

// Finding codes:
//   UNRESOLVED_REFERENCE  Error    name does not resolve in the catalog
//   DANGLING_INPUT        Warning  consumed, never produced, not declared external
//   STAGE_ORDER           Warning  artifact flows backward in stage order off-cycle
//   TERMINAL_OUTPUT       Info     produced but never consumed
//   CYCLE                 Info     producer/consumer loop (expected in DevOps flows)
struct ValidationFinding {
    Severity severity = Severity::Info;
    std::string code;
    std::string subject;
    std::string message;

    bool operator==(const ValidationFinding&) const = default;
};

inline void sort_findings(std::vector<ValidationFinding>& findings) {
    std::sort(findings.begin(), findings.end(),
              [](const ValidationFinding& a, const ValidationFinding& b) {
                  if (a.severity != b.severity) return a.severity < b.severity;
                  if (a.subject != b.subject) return a.subject < b.subject;
                  if (a.code != b.code) return a.code < b.code;
                  return a.message < b.message;
              });
}

/// One finding per line, for CI log scraping and gating.
inline std::string findings_to_jsonl(const std::vector<ValidationFinding>& findings) {
    std::string out;
    for (const ValidationFinding& finding : findings) {
        json line;
        line["severity"] = std::string(to_string(finding.severity));
        line["code"] = finding.code;
        line["subject"] = finding.subject;
        line["message"] = finding.message;
        out += line.dump();
        out += "\n";
    }
    return out;
}

/// Sidecar list of boundary artifacts (customer needs, third-party
/// feeds) that legitimately enter the flow unproduced. Kept explicit so
/// the modeler acknowledges every boundary rather than having the
/// validator infer them.
inline std::set<std::string> load_external_inputs(const std::string& path) {
    json j = detail::parse_json(read_file(path), "external-inputs document");
    detail::check_keys(j, {"schema", "artifacts"}, "external-inputs");
    std::string schema = detail::require_string(j, "schema", "external-inputs");
    if (schema != "s2c-external/1")
        throw SchemaError("unsupported schema '" + schema + "', expected 's2c-external/1'",
                          "schema");
    return detail::string_set(detail::require(j, "artifacts", "external-inputs"), "artifacts");
}

struct GraphEdge {
    std::string producer;
    std::string consumer;
    std::string artifact;

    bool operator==(const GraphEdge&) const = default;
    bool operator<(const GraphEdge& other) const {
        if (producer != other.producer) return producer < other.producer;
        if (consumer != other.consumer) return consumer < other.consumer;
        return artifact < other.artifact;
    }
};

/// Producer→consumer flow over catalog activities. An edge (p, c, a)
/// exists iff artifact a is in p.outputs and in c.inputs. Immutable
/// once built.
struct OrchestrationGraph {
    std::vector<std::string> nodes;         // activity ids, sorted
    std::vector<GraphEdge> edges;           // sorted
    std::set<std::string> external_inputs;  // declared and actually consumed-unproduced
    std::vector<ValidationFinding> findings;
};

namespace detail {

/// Kosaraju over activity ids; returns component index per node.
/// Adjacency is processed in sorted order, so the assignment is
/// deterministic.
inline std::map<std::string, int> strongly_connected_components(
    const std::vector<std::string>& nodes, const std::vector<GraphEdge>& edges) {
    std::map<std::string, std::vector<std::string>> forward, backward;
    for (const std::string& node : nodes) {
        forward[node];
        backward[node];
    }
    for (const GraphEdge& edge : edges) {
        forward[edge.producer].push_back(edge.consumer);
        backward[edge.consumer].push_back(edge.producer);
    }
    for (auto& [_, adjacent] : forward) {
        std::sort(adjacent.begin(), adjacent.end());
        adjacent.erase(std::unique(adjacent.begin(), adjacent.end()), adjacent.end());
    }
    for (auto& [_, adjacent] : backward) {
        std::sort(adjacent.begin(), adjacent.end());
        adjacent.erase(std::unique(adjacent.begin(), adjacent.end()), adjacent.end());
    }

    // Pass 1: iterative DFS finish order on the forward graph.
    std::vector<std::string> finish_order;
    std::set<std::string> visited;
    for (const std::string& start : nodes) {
        if (visited.count(start)) continue;
        std::vector<std::pair<std::string, std::size_t>> stack{{start, 0}};
        visited.insert(start);
        while (!stack.empty()) {
            auto& [node, next_child] = stack.back();
            const std::vector<std::string>& adjacent = forward[node];
            if (next_child < adjacent.size()) {
                const std::string& child = adjacent[next_child++];
                if (!visited.count(child)) {
                    visited.insert(child);
                    stack.emplace_back(child, 0);
                }
            } else {
                finish_order.push_back(node);
                stack.pop_back();
            }
        }
    }

    // Pass 2: reverse graph in decreasing finish order.
    std::map<std::string, int> component;
    int current = 0;
    for (auto it = finish_order.rbegin(); it != finish_order.rend(); ++it) {
        if (component.count(*it)) continue;
        std::vector<std::string> stack{*it};
        component[*it] = current;
        while (!stack.empty()) {
            std::string node = stack.back();
            stack.pop_back();
            for (const std::string& prev : backward[node]) {
                if (!component.count(prev)) {
                    component[prev] = current;
                    stack.push_back(prev);
                }
            }
        }
        ++current;
    }
    return component;
}

}  // namespace detail

/// Builds the orchestration graph and its integrity findings.
/// Artifacts consumed but never produced must appear in
/// declared_external or they raise a DANGLING_INPUT warning; cycles are
/// informational because the pipeline flow is cyclic by design.
inline OrchestrationGraph build_graph(const ActivityCatalog& catalog,
                                      const std::set<std::string>& declared_external = {}) {
    OrchestrationGraph graph;
    for (const Activity& act : catalog.activities) graph.nodes.push_back(act.id);
    std::sort(graph.nodes.begin(), graph.nodes.end());

    std::map<std::string, std::vector<std::string>> producers, consumers;
    for (const Activity& act : catalog.activities) {
        for (const std::string& artifact : act.outputs) producers[artifact].push_back(act.id);
        for (const std::string& artifact : act.inputs) consumers[artifact].push_back(act.id);
    }

    for (const auto& [artifact, produced_by] : producers) {
        auto it = consumers.find(artifact);
        if (it == consumers.end()) continue;
        for (const std::string& producer : produced_by)
            for (const std::string& consumer : it->second)
                graph.edges.push_back({producer, consumer, artifact});
    }
    std::sort(graph.edges.begin(), graph.edges.end());

    for (const auto& [artifact, consumed_by] : consumers) {
        if (producers.count(artifact)) continue;
        if (declared_external.count(artifact)) {
            graph.external_inputs.insert(artifact);
            continue;
        }
        graph.findings.push_back(
            {Severity::Warning, "DANGLING_INPUT", artifact,
             "artifact '" + artifact + "' is consumed by " + join(consumed_by, ", ") +
                 " but never produced and not declared external"});
    }

    for (const auto& [artifact, produced_by] : producers) {
        if (consumers.count(artifact)) continue;
        graph.findings.push_back({Severity::Info, "TERMINAL_OUTPUT", artifact,
                                  "artifact '" + artifact + "' is produced by " +
                                      join(produced_by, ", ") + " but never consumed"});
    }

    std::map<std::string, int> component =
        detail::strongly_connected_components(graph.nodes, graph.edges);
    std::set<std::string> self_loops;
    for (const GraphEdge& edge : graph.edges)
        if (edge.producer == edge.consumer) self_loops.insert(edge.producer);

    std::map<int, std::vector<std::string>> members;
    for (const std::string& node : graph.nodes) members[component[node]].push_back(node);
    std::vector<std::vector<std::string>> cycles;
    for (auto& [_, nodes] : members) {
        if (nodes.size() > 1 || (nodes.size() == 1 && self_loops.count(nodes[0]))) {
            std::sort(nodes.begin(), nodes.end());
            cycles.push_back(nodes);
        }
    }
    std::sort(cycles.begin(), cycles.end());
    for (const std::vector<std::string>& cycle : cycles)
        graph.findings.push_back({Severity::Info, "CYCLE", cycle.front(),
                                  "activities form a producer/consumer cycle: " +
                                      join(cycle, ", ")});

    sort_findings(graph.findings);
    return graph;
}

/// Flags edges whose consumer sits earlier in the canonical stage order
/// than the producer. Edges that lie on a cycle are exempt: a cycle is
/// the Monitor→Plan feedback loop closing, and some edge of it must run
/// backward in stage order.
inline std::vector<ValidationFinding> check_stage_consistency(const OrchestrationGraph& graph,
                                                              const ActivityCatalog& catalog) {
    std::map<std::string, int> component =
        detail::strongly_connected_components(graph.nodes, graph.edges);

    std::vector<ValidationFinding> findings;
    for (const GraphEdge& edge : graph.edges) {
        const Activity* producer = catalog.find_activity(edge.producer);
        const Activity* consumer = catalog.find_activity(edge.consumer);
        if (!producer || !consumer) continue;
        std::size_t from = min_stage_index(*producer);
        std::size_t to = min_stage_index(*consumer);
        if (to >= from) continue;
        if (component[edge.producer] == component[edge.consumer]) continue;  // feedback loop
        findings.push_back(
            {Severity::Warning, "STAGE_ORDER", edge.producer,
             "artifact '" + edge.artifact + "' flows from '" + edge.producer + "' (" +
                 std::string(to_string(kPipelineStages[from])) + ") back to '" + edge.consumer +
                 "' (" + std::string(to_string(kPipelineStages[to])) +
                 ") outside any feedback cycle"});
    }
    sort_findings(findings);
    return findings;
}

}  // namespace s2c
