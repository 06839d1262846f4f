#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "s2c/catalog.hpp"
#include "s2c/catalog_io.hpp"
#include "s2c/util.hpp"

namespace s2c {

/// Activity counts and half-up rounded percentages for one scope: a
/// practice code or "global". Percent columns are not renormalized; the
/// rounding slack |sum - 100| <= 2 is accepted as is.
struct AutomationSummary {
    std::string scope;
    std::array<int, 5> counts{};    // indexed by AutomationLevel
    std::array<int, 5> percents{};  // half-up percent of total
    int total = 0;

    bool operator==(const AutomationSummary&) const = default;

    int count(AutomationLevel level) const { return counts[static_cast<std::size_t>(level)]; }
    int percent(AutomationLevel level) const {
        return percents[static_cast<std::size_t>(level)];
    }
};

namespace detail {

inline AutomationSummary summarize_counts(std::string scope, const std::array<int, 5>& counts) {
    AutomationSummary summary;
    summary.scope = std::move(scope);
    summary.counts = counts;
    for (int n : counts) summary.total += n;
    for (std::size_t i = 0; i < counts.size(); ++i)
        summary.percents[i] = half_up_percent(counts[i], summary.total);
    return summary;
}

inline void require_classified(const ActivityCatalog& catalog) {
    std::vector<std::string> pending = unclassified_ids(catalog);
    if (!pending.empty())
        throw UnclassifiedError("catalog contains unclassified activities", std::move(pending));
}

}  // namespace detail

/// One summary per practice that has activities, in catalog order,
/// followed by the global summary. Every activity must be classified.
inline std::vector<AutomationSummary> summarize(const ActivityCatalog& catalog) {
    detail::require_classified(catalog);

    std::map<std::string, std::array<int, 5>> per_practice;
    std::array<int, 5> global{};
    for (const Activity& act : catalog.activities) {
        std::size_t level = static_cast<std::size_t>(*act.automation);
        ++per_practice[act.practice][level];
        ++global[level];
    }

    std::vector<AutomationSummary> summaries;
    for (const Practice& practice : catalog.practices) {
        auto it = per_practice.find(practice.code);
        if (it == per_practice.end()) continue;  // practice without activities
        summaries.push_back(detail::summarize_counts(practice.code, it->second));
    }
    summaries.push_back(detail::summarize_counts("global", global));
    return summaries;
}

/// Half-up percent of activities that are not pure human tasks.
inline int automation_potential(const AutomationSummary& summary) {
    int human = summary.count(AutomationLevel::HumanTask);
    return half_up_percent(summary.total - human, summary.total);
}

struct RoadmapEntry {
    int rank = 0;
    std::string activity_id;
    AutomationLevel automation = AutomationLevel::HumanTask;
    std::string rationale;

    bool operator==(const RoadmapEntry&) const = default;
};

inline std::string roadmap_rationale(AutomationLevel level) {
    switch (level) {
        case AutomationLevel::Complete:
            return "fully automatable with available tooling; orchestrate directly in the pipeline";
        case AutomationLevel::PartialAutomation:
            return "partially automatable; orchestrate the tool and attest the manual remainder";
        case AutomationLevel::Transparency:
            return "tool-supported visibility; keep a human decision on the tool output";
        case AutomationLevel::ToolPossible:
            return "automatable in principle; no tool identified yet, consider building one";
        case AutomationLevel::HumanTask:
            return "manual activity; plan human effort and record attestations as evidence";
    }
    return "";
}

/// Improvement roadmap over all activities not excluded: most
/// automatable first, ties broken by earliest stage, then id. Ranks are
/// contiguous from 1.
inline std::vector<RoadmapEntry> roadmap(const ActivityCatalog& catalog,
                                         const std::set<std::string>& exclude = {}) {
    detail::require_classified(catalog);

    std::vector<const Activity*> selected;
    for (const Activity& act : catalog.activities)
        if (!exclude.count(act.id)) selected.push_back(&act);

    std::sort(selected.begin(), selected.end(), [](const Activity* a, const Activity* b) {
        int pa = roadmap_priority(*a->automation), pb = roadmap_priority(*b->automation);
        if (pa != pb) return pa < pb;
        std::size_t sa = min_stage_index(*a), sb = min_stage_index(*b);
        if (sa != sb) return sa < sb;
        return a->id < b->id;
    });

    std::vector<RoadmapEntry> entries;
    int rank = 1;
    for (const Activity* act : selected)
        entries.push_back({rank++, act->id, *act->automation, roadmap_rationale(*act->automation)});
    return entries;
}

// ── Exports ──────────────────────────────────────────────────────────────

inline json summaries_to_json(const std::vector<AutomationSummary>& summaries) {
    json j;
    j["schema"] = "s2c-stats/1";
    json rows = json::array();
    for (const AutomationSummary& summary : summaries) {
        json row;
        row["scope"] = summary.scope;
        json counts, percents;
        for (AutomationLevel level : kAutomationLevels) {
            counts[std::string(to_string(level))] = summary.count(level);
            percents[std::string(to_string(level))] = summary.percent(level);
        }
        row["counts"] = counts;
        row["percents"] = percents;
        row["total"] = summary.total;
        row["automation_potential_percent"] = automation_potential(summary);
        rows.push_back(row);
    }
    j["summaries"] = rows;
    return j;
}

/// Plain-text table with one stacked bar per scope, ~5% per character.
inline std::string summaries_to_text(const std::vector<AutomationSummary>& summaries) {
    static const char kBarLetters[5] = {'H', 'T', 'P', 'o', 'C'};
    std::string out;
    out += pad_right("scope", 9);
    for (AutomationLevel level : kAutomationLevels)
        out += pad_left(std::string(to_string(level)), 20);
    out += pad_left("total", 7) + pad_left("potential", 11) + "\n";

    for (const AutomationSummary& summary : summaries) {
        out += pad_right(summary.scope, 9);
        for (AutomationLevel level : kAutomationLevels) {
            std::string cell = std::to_string(summary.count(level)) + " (" +
                               std::to_string(summary.percent(level)) + "%)";
            out += pad_left(cell, 20);
        }
        out += pad_left(std::to_string(summary.total), 7);
        out += pad_left(std::to_string(automation_potential(summary)) + "%", 11);
        out += "\n";
    }

    out += "\n";
    for (const AutomationSummary& summary : summaries) {
        std::string bar;
        for (std::size_t i = 0; i < summary.percents.size(); ++i)
            bar.append(static_cast<std::size_t>(summary.percents[i] / 5), kBarLetters[i]);
        out += pad_right(summary.scope, 9) + "[" + pad_right(bar, 20) + "]\n";
    }
    out += "one char ~ 5%: H human-task, T transparency, P partial-automation, o tool-possible, "
           "C complete\n";
    return out;
}

inline json roadmap_to_json(const std::vector<RoadmapEntry>& entries) {
    json j;
    j["schema"] = "s2c-roadmap/1";
    json rows = json::array();
    for (const RoadmapEntry& entry : entries) {
        json row;
        row["rank"] = entry.rank;
        row["activity"] = entry.activity_id;
        row["automation"] = std::string(to_string(entry.automation));
        row["rationale"] = entry.rationale;
        rows.push_back(row);
    }
    j["entries"] = rows;
    return j;
}

}  // namespace s2c
