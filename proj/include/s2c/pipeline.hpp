#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "json.hpp"
#include "s2c/catalog.hpp"
#include "s2c/catalog_io.hpp"
#include "s2c/errors.hpp"
#include "s2c/util.hpp"

namespace s2c {

inline constexpr const char* kPipelineSchema = "s2c-pipeline/1";
inline constexpr const char* kAttestationSchema = "s2c-attest/1";

// ── Pipeline model ───────────────────────────────────────────────────────

struct PipelineStep {
    std::string name;
    std::optional<std::string> tool;
    std::vector<std::string> produces;

    bool operator==(const PipelineStep&) const = default;
};

struct PipelineJob {
    std::string name;
    std::vector<PipelineStep> steps;  // vector order is the stage-local order

    bool operator==(const PipelineJob&) const = default;
};

struct PipelineStageEntry {
    PipelineStage stage = PipelineStage::Plan;
    std::vector<PipelineJob> jobs;

    bool operator==(const PipelineStageEntry&) const = default;
};

/// Normalized CI/CD pipeline: an ordered list of stage entries, each
/// with jobs and steps. Vendor-specific pipeline files are converted to
/// this format out of tree.
struct PipelineModel {
    std::string name;
    std::vector<PipelineStageEntry> stages;

    bool operator==(const PipelineModel&) const = default;
};

// ── Attestations ─────────────────────────────────────────────────────────

/// Recorded human declaration that an activity was performed; the
/// compliance path for activities a pipeline cannot evidence.
struct Attestation {
    std::string activity_id;
    std::string attested_by;
    std::string date;  // ISO-8601 calendar date
    std::string evidence_ref;

    bool operator==(const Attestation&) const = default;
};

namespace detail {

inline bool valid_iso_date(const std::string& date) {
    if (date.size() != 10 || date[4] != '-' || date[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(date[i]))) return false;
    int year = std::stoi(date.substr(0, 4));
    int month = std::stoi(date.substr(5, 2));
    int day = std::stoi(date.substr(8, 2));
    if (month < 1 || month > 12 || day < 1) return false;
    static const int days[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int limit = days[month - 1];
    bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    if (month == 2 && leap) limit = 29;
    return day <= limit;
}

inline PipelineStage parse_stage_or_throw(const std::string& name, const std::string& where) {
    auto stage = parse_stage(name);
    if (stage) return *stage;
    std::vector<std::string> accepted;
    for (PipelineStage s : kPipelineStages) accepted.push_back(std::string(to_string(s)));
    throw StageError("unmappable stage name '" + name + "' at " + where +
                     "; accepted: " + join(accepted, ", ") + " (alias: concept -> plan)");
}

/// YAML-to-JSON lowering for the normalized schema: maps, sequences,
/// and scalars only, every scalar read as a string.
inline json yaml_to_json(const YAML::Node& node) {
    switch (node.Type()) {
        case YAML::NodeType::Null: return nullptr;
        case YAML::NodeType::Scalar: return node.as<std::string>();
        case YAML::NodeType::Sequence: {
            json array = json::array();
            for (const auto& item : node) array.push_back(yaml_to_json(item));
            return array;
        }
        case YAML::NodeType::Map: {
            json object = json::object();
            for (const auto& entry : node)
                object[entry.first.as<std::string>()] = yaml_to_json(entry.second);
            return object;
        }
        default: return nullptr;
    }
}

}  // namespace detail

inline PipelineModel pipeline_from_json(const json& j) {
    detail::check_keys(j, {"schema", "name", "stages"}, "pipeline");
    std::string schema = detail::require_string(j, "schema", "pipeline");
    if (schema != kPipelineSchema)
        throw SchemaError("unsupported schema '" + schema + "', expected '" + kPipelineSchema +
                              "'",
                          "schema");

    PipelineModel model;
    model.name = detail::require_string(j, "name", "pipeline");
    const json& stages = detail::require(j, "stages", "pipeline");
    if (!stages.is_array()) throw SchemaError("'stages' must be an array", "stages");

    for (std::size_t i = 0; i < stages.size(); ++i) {
        const std::string stage_where = "stages[" + std::to_string(i) + "]";
        detail::check_keys(stages[i], {"stage", "jobs"}, stage_where);
        PipelineStageEntry entry;
        entry.stage = detail::parse_stage_or_throw(
            detail::require_string(stages[i], "stage", stage_where), stage_where);

        const json& jobs = detail::require(stages[i], "jobs", stage_where);
        if (!jobs.is_array()) throw SchemaError("'jobs' must be an array", stage_where);
        for (std::size_t k = 0; k < jobs.size(); ++k) {
            const std::string job_where = stage_where + ".jobs[" + std::to_string(k) + "]";
            detail::check_keys(jobs[k], {"name", "steps"}, job_where);
            PipelineJob job;
            job.name = detail::require_string(jobs[k], "name", job_where);

            const json& steps = detail::require(jobs[k], "steps", job_where);
            if (!steps.is_array()) throw SchemaError("'steps' must be an array", job_where);
            for (std::size_t s = 0; s < steps.size(); ++s) {
                const std::string step_where = job_where + ".steps[" + std::to_string(s) + "]";
                detail::check_keys(steps[s], {"name", "tool", "produces"}, step_where);
                PipelineStep step;
                step.name = detail::require_string(steps[s], "name", step_where);
                if (steps[s].contains("tool")) {
                    if (!steps[s]["tool"].is_string())
                        throw SchemaError("'tool' must be a string", step_where);
                    step.tool = steps[s]["tool"].get<std::string>();
                }
                if (steps[s].contains("produces"))
                    step.produces = detail::string_array(steps[s]["produces"],
                                                         step_where + ".produces");
                job.steps.push_back(std::move(step));
            }
            entry.jobs.push_back(std::move(job));
        }
        model.stages.push_back(std::move(entry));
    }
    return model;
}

/// Reads a normalized pipeline file, YAML or JSON. JSON is detected by
/// a ".json" extension or a leading '{'.
inline PipelineModel parse_pipeline(const std::string& path) {
    std::string text = read_file(path);
    bool looks_json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') looks_json = true;

    if (looks_json) return pipeline_from_json(detail::parse_json(text, "pipeline document"));
    try {
        return pipeline_from_json(detail::yaml_to_json(YAML::Load(text)));
    } catch (const YAML::Exception& e) {
        throw SchemaError(std::string("malformed pipeline document: ") + e.what(),
                          "line " + std::to_string(e.mark.line + 1));
    }
}

inline json pipeline_to_json(const PipelineModel& model) {
    json j;
    j["schema"] = kPipelineSchema;
    j["name"] = model.name;
    json stages = json::array();
    for (const PipelineStageEntry& entry : model.stages) {
        json stage;
        stage["stage"] = std::string(to_string(entry.stage));
        json jobs = json::array();
        for (const PipelineJob& job : entry.jobs) {
            json jj;
            jj["name"] = job.name;
            json steps = json::array();
            for (const PipelineStep& step : job.steps) {
                json js;
                js["name"] = step.name;
                if (step.tool) js["tool"] = *step.tool;
                if (!step.produces.empty()) js["produces"] = step.produces;
                steps.push_back(js);
            }
            jj["steps"] = steps;
            jobs.push_back(jj);
        }
        stage["jobs"] = jobs;
        stages.push_back(stage);
    }
    j["stages"] = stages;
    return j;
}

inline std::vector<Attestation> attestations_from_json(const json& j) {
    detail::check_keys(j, {"schema", "attestations"}, "attestations");
    std::string schema = detail::require_string(j, "schema", "attestations");
    if (schema != kAttestationSchema)
        throw SchemaError("unsupported schema '" + schema + "', expected '" +
                              kAttestationSchema + "'",
                          "schema");
    const json& list = detail::require(j, "attestations", "attestations");
    if (!list.is_array()) throw SchemaError("'attestations' must be an array", "attestations");

    std::vector<Attestation> attestations;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string where = "attestations[" + std::to_string(i) + "]";
        detail::check_keys(list[i], {"activity", "attested_by", "date", "evidence_ref"}, where);
        Attestation att;
        att.activity_id = detail::require_string(list[i], "activity", where);
        att.attested_by = detail::require_string(list[i], "attested_by", where);
        att.date = detail::require_string(list[i], "date", where);
        if (!detail::valid_iso_date(att.date))
            throw SchemaError("'" + att.date + "' is not an ISO-8601 calendar date",
                              where + ".date");
        att.evidence_ref = detail::require_string(list[i], "evidence_ref", where);
        attestations.push_back(std::move(att));
    }
    return attestations;
}

inline std::vector<Attestation> load_attestations(const std::string& path) {
    return attestations_from_json(
        detail::parse_json(read_file(path), "attestations document"));
}

// ── Assessment ───────────────────────────────────────────────────────────

enum class Verdict { Gap, PartiallyCovered, SatisfiedAttested, SatisfiedAutomated };

inline std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Gap: return "gap";
        case Verdict::PartiallyCovered: return "partially-covered";
        case Verdict::SatisfiedAttested: return "satisfied-attested";
        case Verdict::SatisfiedAutomated: return "satisfied-automated";
    }
    return "";
}

/// Monotonic satisfaction scale: Gap < PartiallyCovered < Satisfied.
inline int satisfaction_rank(Verdict verdict) {
    switch (verdict) {
        case Verdict::Gap: return 0;
        case Verdict::PartiallyCovered: return 1;
        case Verdict::SatisfiedAttested: return 2;
        case Verdict::SatisfiedAutomated: return 2;
    }
    return 0;
}

struct EvidenceRef {
    std::string activity_id;
    std::string kind;  // "step" or "attestation"
    std::string reference;

    bool operator==(const EvidenceRef&) const = default;
};

struct AssessmentResult {
    std::map<std::string, Verdict> per_activity;  // exactly one verdict per activity
    int coverage_percent = 0;                     // half-up percent of non-Gap verdicts
    std::vector<EvidenceRef> evidence_manifest;

    bool operator==(const AssessmentResult&) const = default;
};

namespace detail {

struct StepMatch {
    bool found = false;
    std::string reference;  // "stage/job/step" of the first match
};

/// First pipeline step invoking one of the activity's tools, split into
/// designated-stage and off-stage matches. Only ci_integrable registry
/// tools participate; step tools match by exact name or declared alias.
inline std::pair<StepMatch, StepMatch> find_tool_steps(const PipelineModel& pipeline,
                                                       const ActivityCatalog& catalog,
                                                       const Activity& activity) {
    StepMatch designated, elsewhere;
    for (const PipelineStageEntry& entry : pipeline.stages) {
        for (const PipelineJob& job : entry.jobs) {
            for (const PipelineStep& step : job.steps) {
                if (!step.tool) continue;
                bool matches = false;
                for (const std::string& tool_name : activity.tools) {
                    const ToolRef* tool = catalog.find_tool(tool_name);
                    if (!tool || !tool->ci_integrable) continue;
                    if (*step.tool == tool->name || tool->aliases.count(*step.tool))
                        matches = true;
                }
                if (!matches) continue;
                StepMatch& slot =
                    activity.stages.count(entry.stage) ? designated : elsewhere;
                if (!slot.found) {
                    slot.found = true;
                    slot.reference = std::string(to_string(entry.stage)) + "/" + job.name + "/" +
                                     step.name;
                }
            }
        }
    }
    return {designated, elsewhere};
}

}  // namespace detail

/// Applies the verdict rules to every catalog activity:
///   - Complete + matching tool step in a designated stage  -> SatisfiedAutomated
///   - Complete + matching tool step in another stage       -> PartiallyCovered
///   - PartialAutomation/Transparency + designated step     -> PartiallyCovered,
///     or SatisfiedAttested when an attestation covers the manual remainder
///   - HumanTask/ToolPossible + attestation                 -> SatisfiedAttested
///   - anything else                                        -> Gap
inline AssessmentResult assess(const PipelineModel& pipeline, const ActivityCatalog& catalog,
                               const std::vector<Attestation>& attestations) {
    {
        std::vector<std::string> pending = unclassified_ids(catalog);
        if (!pending.empty())
            throw UnclassifiedError("cannot assess unclassified activities", std::move(pending));
    }

    std::map<std::string, const Attestation*> attested;
    std::vector<std::string> unknown;
    for (const Attestation& att : attestations) {
        if (!catalog.find_activity(att.activity_id)) {
            unknown.push_back("attestation for unknown activity '" + att.activity_id + "'");
            continue;
        }
        attested.emplace(att.activity_id, &att);  // first attestation wins as evidence
    }
    if (!unknown.empty())
        throw ReferenceError("attestations do not resolve against the catalog",
                             std::move(unknown));

    AssessmentResult result;
    int covered = 0;
    for (const Activity& act : catalog.activities) {
        auto [designated, elsewhere] = detail::find_tool_steps(pipeline, catalog, act);
        const Attestation* attestation = nullptr;
        if (auto it = attested.find(act.id); it != attested.end()) attestation = it->second;

        Verdict verdict = Verdict::Gap;
        std::vector<EvidenceRef> evidence;
        switch (*act.automation) {
            case AutomationLevel::Complete:
                if (designated.found) {
                    verdict = Verdict::SatisfiedAutomated;
                    evidence.push_back({act.id, "step", designated.reference});
                } else if (elsewhere.found) {
                    verdict = Verdict::PartiallyCovered;
                    evidence.push_back({act.id, "step", elsewhere.reference});
                }
                break;
            case AutomationLevel::PartialAutomation:
            case AutomationLevel::Transparency:
                if (designated.found && attestation) {
                    verdict = Verdict::SatisfiedAttested;
                    evidence.push_back({act.id, "step", designated.reference});
                    evidence.push_back({act.id, "attestation", attestation->evidence_ref});
                } else if (designated.found) {
                    verdict = Verdict::PartiallyCovered;
                    evidence.push_back({act.id, "step", designated.reference});
                }
                break;
            case AutomationLevel::HumanTask:
            case AutomationLevel::ToolPossible:
                if (attestation) {
                    verdict = Verdict::SatisfiedAttested;
                    evidence.push_back({act.id, "attestation", attestation->evidence_ref});
                }
                break;
        }

        result.per_activity[act.id] = verdict;
        if (verdict != Verdict::Gap) ++covered;
        for (EvidenceRef& ref : evidence) result.evidence_manifest.push_back(std::move(ref));
    }

    std::sort(result.evidence_manifest.begin(), result.evidence_manifest.end(),
              [](const EvidenceRef& a, const EvidenceRef& b) {
                  if (a.activity_id != b.activity_id) return a.activity_id < b.activity_id;
                  return a.kind < b.kind;
              });
    result.coverage_percent =
        half_up_percent(covered, static_cast<long long>(catalog.activities.size()));
    return result;
}

// ── Coverage table ───────────────────────────────────────────────────────

struct PracticeCoverageRow {
    std::string practice;  // practice code or "global"
    std::array<int, 4> verdict_counts{};  // indexed by Verdict
    int total = 0;
    int coverage_percent = 0;

    bool operator==(const PracticeCoverageRow&) const = default;

    int count(Verdict verdict) const {
        return verdict_counts[static_cast<std::size_t>(verdict)];
    }
};

struct CoverageTable {
    std::vector<PracticeCoverageRow> rows;  // per practice, catalog order
    PracticeCoverageRow global;

    bool operator==(const CoverageTable&) const = default;
};

/// Per-practice verdict counts plus coverage percent; the global row is
/// the element-wise aggregate.
inline CoverageTable coverage_report(const AssessmentResult& result,
                                     const ActivityCatalog& catalog) {
    std::map<std::string, PracticeCoverageRow> per_practice;
    PracticeCoverageRow global;
    global.practice = "global";

    for (const Activity& act : catalog.activities) {
        auto it = result.per_activity.find(act.id);
        if (it == result.per_activity.end())
            throw ReferenceError("assessment result does not cover the catalog",
                                 {"activity '" + act.id + "' has no verdict"});
        PracticeCoverageRow& row = per_practice[act.practice];
        row.practice = act.practice;
        ++row.verdict_counts[static_cast<std::size_t>(it->second)];
        ++row.total;
        ++global.verdict_counts[static_cast<std::size_t>(it->second)];
        ++global.total;
    }

    CoverageTable table;
    for (const Practice& practice : catalog.practices) {
        auto it = per_practice.find(practice.code);
        if (it == per_practice.end()) continue;
        PracticeCoverageRow row = it->second;
        row.coverage_percent = half_up_percent(row.total - row.count(Verdict::Gap), row.total);
        table.rows.push_back(std::move(row));
    }
    global.coverage_percent =
        half_up_percent(global.total - global.count(Verdict::Gap), global.total);
    table.global = std::move(global);
    return table;
}

/// Canonical JSON export of an assessment; byte-stable for equal inputs.
inline json result_to_json(const AssessmentResult& result) {
    json j;
    j["schema"] = "s2c-assessment/1";
    j["coverage_percent"] = result.coverage_percent;
    json verdicts = json::object();
    for (const auto& [id, verdict] : result.per_activity)
        verdicts[id] = std::string(to_string(verdict));
    j["per_activity"] = verdicts;
    json evidence = json::array();
    for (const EvidenceRef& ref : result.evidence_manifest) {
        json entry;
        entry["activity"] = ref.activity_id;
        entry["kind"] = ref.kind;
        entry["reference"] = ref.reference;
        evidence.push_back(entry);
    }
    j["evidence"] = evidence;
    return j;
}

}  // namespace s2c
