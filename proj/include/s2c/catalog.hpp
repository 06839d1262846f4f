#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "s2c/errors.hpp"
#include "s2c/util.hpp"

namespace s2c {

// ── Enumerations ─────────────────────────────────────────────────────────

/// How far an activity can be automated. Ordered here as it appears in
/// statistics output; the roadmap priority is a separate total order
/// (see roadmap_priority).
enum class AutomationLevel {
    HumanTask,          ///< a human must perform the activity
    Transparency,       ///< a human decides based on tool output
    PartialAutomation,  ///< tooling covers parts, manual input completes it
    ToolPossible,       ///< automatable in principle, no tool identified
    Complete,           ///< a tool performs the whole activity
};

inline constexpr std::array<AutomationLevel, 5> kAutomationLevels = {
    AutomationLevel::HumanTask,     AutomationLevel::Transparency,
    AutomationLevel::PartialAutomation, AutomationLevel::ToolPossible,
    AutomationLevel::Complete,
};

inline std::string_view to_string(AutomationLevel level) {
    switch (level) {
        case AutomationLevel::HumanTask: return "human-task";
        case AutomationLevel::Transparency: return "transparency";
        case AutomationLevel::PartialAutomation: return "partial-automation";
        case AutomationLevel::ToolPossible: return "tool-possible";
        case AutomationLevel::Complete: return "complete";
    }
    return "";
}

inline std::optional<AutomationLevel> parse_automation_level(std::string_view name) {
    for (AutomationLevel level : kAutomationLevels)
        if (name == to_string(level)) return level;
    return std::nullopt;
}

/// Roadmap ordering: the most automatable activities come first.
/// Transparency ranks above ToolPossible: it has tool support today.
inline int roadmap_priority(AutomationLevel level) {
    switch (level) {
        case AutomationLevel::Complete: return 0;
        case AutomationLevel::PartialAutomation: return 1;
        case AutomationLevel::Transparency: return 2;
        case AutomationLevel::ToolPossible: return 3;
        case AutomationLevel::HumanTask: return 4;
    }
    return 5;
}

/// Canonical cyclic stage order of a DevOps pipeline. Enumerator value
/// doubles as the stage index used for "as early as possible" checks.
enum class PipelineStage {
    Plan,
    Code,
    Build,
    Test,
    Release,
    Deploy,
    Operate,
    Monitor,
};

inline constexpr std::array<PipelineStage, 8> kPipelineStages = {
    PipelineStage::Plan,    PipelineStage::Code,    PipelineStage::Build,
    PipelineStage::Test,    PipelineStage::Release, PipelineStage::Deploy,
    PipelineStage::Operate, PipelineStage::Monitor,
};

inline std::string_view to_string(PipelineStage stage) {
    switch (stage) {
        case PipelineStage::Plan: return "plan";
        case PipelineStage::Code: return "code";
        case PipelineStage::Build: return "build";
        case PipelineStage::Test: return "test";
        case PipelineStage::Release: return "release";
        case PipelineStage::Deploy: return "deploy";
        case PipelineStage::Operate: return "operate";
        case PipelineStage::Monitor: return "monitor";
    }
    return "";
}

/// Accepts the canonical names plus "concept" as an alias of plan.
inline std::optional<PipelineStage> parse_stage(std::string_view name) {
    if (name == "concept") return PipelineStage::Plan;
    for (PipelineStage stage : kPipelineStages)
        if (name == to_string(stage)) return stage;
    return std::nullopt;
}

inline std::size_t stage_index(PipelineStage stage) {
    return static_cast<std::size_t>(stage);
}

/// Where an artifact lives once produced.
enum class RepositoryKind {
    Backlog,
    CodeBase,
    TestRepo,
    PreProduction,
    Production,
    Documentation,
    Analytics,
};

inline constexpr std::array<RepositoryKind, 7> kRepositoryKinds = {
    RepositoryKind::Backlog,       RepositoryKind::CodeBase,
    RepositoryKind::TestRepo,      RepositoryKind::PreProduction,
    RepositoryKind::Production,    RepositoryKind::Documentation,
    RepositoryKind::Analytics,
};

inline std::string_view to_string(RepositoryKind kind) {
    switch (kind) {
        case RepositoryKind::Backlog: return "backlog";
        case RepositoryKind::CodeBase: return "code-base";
        case RepositoryKind::TestRepo: return "test-repo";
        case RepositoryKind::PreProduction: return "pre-production";
        case RepositoryKind::Production: return "production";
        case RepositoryKind::Documentation: return "documentation";
        case RepositoryKind::Analytics: return "analytics";
    }
    return "";
}

inline std::optional<RepositoryKind> parse_repository_kind(std::string_view name) {
    for (RepositoryKind kind : kRepositoryKinds)
        if (name == to_string(kind)) return kind;
    return std::nullopt;
}

// ── Catalog records ──────────────────────────────────────────────────────

/// One requirement group of the standard, e.g. SI "Secure implementation".
struct Practice {
    std::string code;
    std::string name;

    bool operator==(const Practice&) const = default;
};

/// A named input/output joining activities into a flow.
struct Artifact {
    std::string name;
    RepositoryKind repository = RepositoryKind::Documentation;
    std::string description;

    bool operator==(const Artifact&) const = default;
};

/// Registry entry for a security tool. `aliases` are alternative names a
/// pipeline step may use; only ci_integrable tools can satisfy pipeline
/// step matches.
struct ToolRef {
    std::string name;
    std::set<std::string> categories;
    std::set<std::string> aliases;
    bool open_source = false;
    bool ci_integrable = false;

    bool operator==(const ToolRef&) const = default;
};

/// The orchestrable unit of a standard requirement. Ids follow
/// `<PRACTICE>-<t|e|g><n>` where t/e/g is the source element kind.
/// `automation == nullopt` marks an unclassified draft.
struct Activity {
    std::string id;
    std::string practice;
    std::string requirement;
    std::string name;
    std::string description;
    std::set<std::string> inputs;
    std::set<std::string> outputs;
    std::optional<AutomationLevel> automation;
    std::set<std::string> tools;
    std::set<PipelineStage> stages;

    bool operator==(const Activity&) const = default;
};

/// Lowest stage index an activity is mapped to; 8 when unmapped.
inline std::size_t min_stage_index(const Activity& activity) {
    std::size_t best = kPipelineStages.size();
    for (PipelineStage stage : activity.stages) best = std::min(best, stage_index(stage));
    return best;
}

/// A full standard instance: practices, artifact and tool registries,
/// and the activity list. Immutable after load; safe to share across
/// threads read-only.
struct ActivityCatalog {
    std::string standard_id;
    std::string version;
    std::vector<Practice> practices;
    std::vector<Artifact> artifacts;
    std::vector<ToolRef> tools;
    std::vector<Activity> activities;

    bool operator==(const ActivityCatalog&) const = default;

    const Practice* find_practice(std::string_view code) const {
        for (const Practice& p : practices)
            if (p.code == code) return &p;
        return nullptr;
    }

    const Artifact* find_artifact(std::string_view name) const {
        for (const Artifact& a : artifacts)
            if (a.name == name) return &a;
        return nullptr;
    }

    const ToolRef* find_tool(std::string_view name) const {
        for (const ToolRef& t : tools)
            if (t.name == name) return &t;
        return nullptr;
    }

    const Activity* find_activity(std::string_view id) const {
        for (const Activity& a : activities)
            if (a.id == id) return &a;
        return nullptr;
    }
};

// ── Canonical form and equality ──────────────────────────────────────────

/// Canonical form sorts activities by id. Practice, artifact, and tool
/// declarations keep their authored order; the string/stage sets inside
/// each record are inherently sorted.
inline ActivityCatalog canonicalized(ActivityCatalog catalog) {
    std::sort(catalog.activities.begin(), catalog.activities.end(),
              [](const Activity& a, const Activity& b) { return a.id < b.id; });
    return catalog;
}

/// Structural equality: field-wise equality up to activity order.
inline bool structurally_equal(const ActivityCatalog& a, const ActivityCatalog& b) {
    return canonicalized(a) == canonicalized(b);
}

// ── Validation ───────────────────────────────────────────────────────────

namespace detail {

inline bool valid_practice_code(std::string_view code) {
    if (code.empty()) return false;
    if (!std::isupper(static_cast<unsigned char>(code[0]))) return false;
    for (char c : code) {
        unsigned char u = static_cast<unsigned char>(c);
        if (!std::isupper(u) && !std::isdigit(u)) return false;
    }
    return true;
}

/// `<PRACTICE>-<t|e|g><n>` with the declared practice as prefix.
inline bool valid_activity_id(std::string_view id, std::string_view practice) {
    if (id.size() < practice.size() + 3) return false;
    if (id.substr(0, practice.size()) != practice) return false;
    std::string_view rest = id.substr(practice.size());
    if (rest[0] != '-') return false;
    if (rest[1] != 't' && rest[1] != 'e' && rest[1] != 'g') return false;
    std::string_view digits = rest.substr(2);
    if (digits.empty()) return false;
    for (char c : digits)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace detail

/// Checks every structural and referential invariant of a catalog.
/// Structural violations raise SchemaError; unresolved names are
/// collected exhaustively and raised as one ReferenceError.
inline void validate_catalog(const ActivityCatalog& catalog) {
    if (catalog.standard_id.empty())
        throw SchemaError("standard_id must be non-empty", "standard_id");
    if (catalog.activities.empty())
        throw SchemaError("Activity count > 0 violated: catalog declares no activities",
                          "activities");

    std::set<std::string> practice_codes;
    for (std::size_t i = 0; i < catalog.practices.size(); ++i) {
        const Practice& p = catalog.practices[i];
        const std::string where = "practices[" + std::to_string(i) + "]";
        if (!detail::valid_practice_code(p.code))
            throw SchemaError("practice code '" + p.code +
                                  "' must be non-empty uppercase alphanumeric",
                              where);
        if (!practice_codes.insert(p.code).second)
            throw SchemaError("duplicate practice code '" + p.code + "'", where);
    }

    std::set<std::string> artifact_names;
    for (std::size_t i = 0; i < catalog.artifacts.size(); ++i) {
        const Artifact& a = catalog.artifacts[i];
        const std::string where = "artifacts[" + std::to_string(i) + "]";
        if (a.name.empty()) throw SchemaError("artifact name must be non-empty", where);
        if (!artifact_names.insert(a.name).second)
            throw SchemaError("duplicate artifact name '" + a.name + "'", where);
    }

    std::set<std::string> tool_names;
    for (std::size_t i = 0; i < catalog.tools.size(); ++i) {
        const ToolRef& t = catalog.tools[i];
        const std::string where = "tools[" + std::to_string(i) + "]";
        if (t.name.empty()) throw SchemaError("tool name must be non-empty", where);
        if (!tool_names.insert(t.name).second)
            throw SchemaError("duplicate tool name '" + t.name + "'", where);
    }

    std::set<std::string> activity_ids;
    std::vector<std::string> unresolved;
    for (std::size_t i = 0; i < catalog.activities.size(); ++i) {
        const Activity& act = catalog.activities[i];
        const std::string where = "activities[" + std::to_string(i) + "]";
        if (act.practice.empty())
            throw SchemaError("activity practice must be non-empty", where);
        if (act.requirement.empty())
            throw SchemaError("activity requirement must be non-empty", where);
        if (!detail::valid_activity_id(act.id, act.practice))
            throw SchemaError("activity id '" + act.id +
                                  "' must match <PRACTICE>-<t|e|g><n> for practice '" +
                                  act.practice + "'",
                              where);
        if (!activity_ids.insert(act.id).second)
            throw SchemaError("duplicate activity id '" + act.id + "'", where);
        if (act.stages.empty())
            throw SchemaError("activity '" + act.id + "' maps to no pipeline stage",
                              where + ".stages");
        if (act.automation == AutomationLevel::HumanTask ||
            act.automation == AutomationLevel::ToolPossible) {
            if (!act.tools.empty())
                throw SchemaError("activity '" + act.id + "' is classified " +
                                      std::string(to_string(*act.automation)) +
                                      " and must not reference tools",
                                  where + ".tools");
        }

        if (!practice_codes.count(act.practice))
            unresolved.push_back("activity '" + act.id + "' references undeclared practice '" +
                                 act.practice + "'");
        for (const std::string& tool : act.tools)
            if (!tool_names.count(tool))
                unresolved.push_back("activity '" + act.id + "' references undeclared tool '" +
                                     tool + "'");
        for (const std::string& input : act.inputs)
            if (!artifact_names.count(input))
                unresolved.push_back("activity '" + act.id +
                                     "' consumes undeclared artifact '" + input + "'");
        for (const std::string& output : act.outputs)
            if (!artifact_names.count(output))
                unresolved.push_back("activity '" + act.id +
                                     "' produces undeclared artifact '" + output + "'");
    }

    if (!unresolved.empty())
        throw ReferenceError("catalog has unresolved references", std::move(unresolved));
}

/// Ids of activities that still carry the unclassified sentinel, sorted.
inline std::vector<std::string> unclassified_ids(const ActivityCatalog& catalog) {
    std::vector<std::string> ids;
    for (const Activity& act : catalog.activities)
        if (!act.automation) ids.push_back(act.id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

// ── Querying ─────────────────────────────────────────────────────────────

/// All fields optional; present fields must all match.
struct ActivityFilter {
    std::optional<std::string> practice;
    std::optional<PipelineStage> stage;
    std::optional<AutomationLevel> automation;
    std::optional<std::string> requirement;
};

/// Builds a filter from raw strings, rejecting unknown stage or
/// automation names. Practice codes are checked against the catalog by
/// query_activities.
inline ActivityFilter make_filter(const std::optional<std::string>& practice,
                                  const std::optional<std::string>& stage,
                                  const std::optional<std::string>& automation,
                                  const std::optional<std::string>& requirement) {
    ActivityFilter filter;
    filter.practice = practice;
    filter.requirement = requirement;
    if (stage) {
        auto parsed = parse_stage(*stage);
        if (!parsed) throw FilterError("unknown stage name '" + *stage + "'");
        filter.stage = *parsed;
    }
    if (automation) {
        auto parsed = parse_automation_level(*automation);
        if (!parsed) throw FilterError("unknown automation level '" + *automation + "'");
        filter.automation = *parsed;
    }
    return filter;
}

/// Activities matching every present filter field, sorted by id.
/// An empty filter returns the whole catalog.
inline std::vector<Activity> query_activities(const ActivityCatalog& catalog,
                                              const ActivityFilter& filter) {
    if (filter.practice && !catalog.find_practice(*filter.practice))
        throw FilterError("unknown practice code '" + *filter.practice + "'");

    std::vector<Activity> result;
    for (const Activity& act : catalog.activities) {
        if (filter.practice && act.practice != *filter.practice) continue;
        if (filter.stage && !act.stages.count(*filter.stage)) continue;
        if (filter.automation && act.automation != *filter.automation) continue;
        if (filter.requirement && act.requirement != *filter.requirement) continue;
        result.push_back(act);
    }
    std::sort(result.begin(), result.end(),
              [](const Activity& a, const Activity& b) { return a.id < b.id; });
    return result;
}

}  // namespace s2c
