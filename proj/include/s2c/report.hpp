#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "s2c/automation.hpp"
#include "s2c/catalog.hpp"
#include "s2c/catalog_io.hpp"
#include "s2c/pipeline.hpp"
#include "s2c/util.hpp"

namespace s2c {

inline constexpr const char* kReportSchema = "s2c-report/1";

enum class ReportFormat { Markdown, Json, Svg, PlainText };

inline std::string_view to_string(ReportFormat format) {
    switch (format) {
        case ReportFormat::Markdown: return "markdown";
        case ReportFormat::Json: return "json";
        case ReportFormat::Svg: return "svg";
        case ReportFormat::PlainText: return "text";
    }
    return "";
}

struct ReportSection {
    std::string title;
    std::string content;

    bool operator==(const ReportSection&) const = default;
};

/// A rendered report plus content hashes of the inputs it was rendered
/// from, so any report can be traced to exact input bytes.
struct ReportBundle {
    ReportFormat format = ReportFormat::PlainText;
    std::vector<ReportSection> sections;
    std::map<std::string, std::string> fingerprints;

    bool operator==(const ReportBundle&) const = default;

    /// Whole-document text. For JSON bundles this is the JSON document
    /// itself; other formats join the sections with format-appropriate
    /// headings.
    std::string assembled() const {
        if (format == ReportFormat::Json && sections.size() == 1) return sections[0].content;
        std::string out;
        for (const ReportSection& section : sections) {
            if (format == ReportFormat::Markdown) {
                out += "## " + section.title + "\n\n" + section.content + "\n";
            } else {
                out += section.title + "\n" + std::string(section.title.size(), '-') + "\n" +
                       section.content + "\n";
            }
        }
        return out;
    }
};

// ── S2C pipeline overview ────────────────────────────────────────────────

/// Which stages each practice occupies, keyed by practice code.
inline std::map<std::string, std::set<PipelineStage>> practice_stage_markers(
    const ActivityCatalog& catalog) {
    std::map<std::string, std::set<PipelineStage>> markers;
    for (const Activity& act : catalog.activities)
        markers[act.practice].insert(act.stages.begin(), act.stages.end());
    return markers;
}

struct S2cOverview {
    std::string svg;
    std::string text;

    bool operator==(const S2cOverview&) const = default;
};

namespace detail {

inline std::string xml_escape(std::string_view raw) {
    std::string out;
    for (char c : raw) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string overview_text(const ActivityCatalog& catalog) {
    const auto markers = practice_stage_markers(catalog);
    auto push_line = [](std::string& sink, std::string line) {
        while (!line.empty() && line.back() == ' ') line.pop_back();
        sink += line + "\n";
    };
    std::string out = "S2C overview: " + catalog.standard_id + " (version " + catalog.version +
                      ")\n\n";
    std::string header = pad_right("practice", 11);
    for (PipelineStage stage : kPipelineStages)
        header += pad_right(std::string(to_string(stage)), 9);
    push_line(out, header);
    for (const Practice& practice : catalog.practices) {
        auto it = markers.find(practice.code);
        std::string row = pad_right(practice.code, 11);
        for (PipelineStage stage : kPipelineStages) {
            bool marked = it != markers.end() && it->second.count(stage);
            row += pad_right(marked ? "X" : ".", 9);
        }
        push_line(out, row);
    }
    out += "\nrepositories: ";
    std::vector<std::string> repos;
    for (RepositoryKind kind : kRepositoryKinds) repos.push_back(std::string(to_string(kind)));
    out += join(repos, " | ");
    out += "\n";
    return out;
}

inline std::string overview_svg(const ActivityCatalog& catalog) {
    const auto markers = practice_stage_markers(catalog);
    const int label_width = 130, cell_width = 90, cell_height = 36, header_height = 40;
    const int top = 50;
    const int rows = static_cast<int>(catalog.practices.size());
    const int grid_right = label_width + 8 * cell_width;
    const int repo_top = top + header_height + rows * cell_height + 16;
    const int height = repo_top + 46 + 30;
    const int width = grid_right + 20;

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
           std::to_string(width) + " " + std::to_string(height) + "\">\n";
    svg += "<title>" + xml_escape(catalog.standard_id + " practices across pipeline stages") +
           "</title>\n";
    svg += "<text x=\"10\" y=\"28\" font-family=\"monospace\" font-size=\"18\">" +
           xml_escape("S2C overview: " + catalog.standard_id + " (version " + catalog.version +
                      ")") +
           "</text>\n";

    // Stage header, green.
    for (std::size_t i = 0; i < kPipelineStages.size(); ++i) {
        int x = label_width + static_cast<int>(i) * cell_width;
        svg += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(top) +
               "\" width=\"" + std::to_string(cell_width - 4) + "\" height=\"" +
               std::to_string(header_height - 8) +
               "\" fill=\"#b5d6a7\" stroke=\"#4a6741\"/>\n";
        svg += "<text x=\"" + std::to_string(x + 8) + "\" y=\"" + std::to_string(top + 21) +
               "\" font-family=\"monospace\" font-size=\"14\">" +
               std::string(to_string(kPipelineStages[i])) + "</text>\n";
    }

    // Practice rows, yellow labels with one marker per occupied stage.
    for (int r = 0; r < rows; ++r) {
        const Practice& practice = catalog.practices[static_cast<std::size_t>(r)];
        int y = top + header_height + r * cell_height;
        svg += "<rect x=\"10\" y=\"" + std::to_string(y) + "\" width=\"" +
               std::to_string(label_width - 20) + "\" height=\"" +
               std::to_string(cell_height - 6) + "\" fill=\"#f2e3a1\" stroke=\"#8a7a2f\"/>\n";
        svg += "<text x=\"18\" y=\"" + std::to_string(y + 20) +
               "\" font-family=\"monospace\" font-size=\"14\">" + xml_escape(practice.code) +
               "</text>\n";
        auto it = markers.find(practice.code);
        for (std::size_t i = 0; i < kPipelineStages.size(); ++i) {
            int x = label_width + static_cast<int>(i) * cell_width;
            svg += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) +
                   "\" width=\"" + std::to_string(cell_width - 4) + "\" height=\"" +
                   std::to_string(cell_height - 6) +
                   "\" fill=\"#ffffff\" stroke=\"#cccccc\"/>\n";
            if (it != markers.end() && it->second.count(kPipelineStages[i])) {
                svg += "<rect x=\"" + std::to_string(x + cell_width / 2 - 10) + "\" y=\"" +
                       std::to_string(y + cell_height / 2 - 13) +
                       "\" width=\"20\" height=\"20\" fill=\"#3b7a57\"/>\n";
            }
        }
    }

    // Repository lane, brown.
    svg += "<rect x=\"10\" y=\"" + std::to_string(repo_top) + "\" width=\"" +
           std::to_string(grid_right - 14) +
           "\" height=\"40\" fill=\"#cfa57e\" stroke=\"#7a5c3e\"/>\n";
    std::vector<std::string> repos;
    for (RepositoryKind kind : kRepositoryKinds) repos.push_back(std::string(to_string(kind)));
    svg += "<text x=\"18\" y=\"" + std::to_string(repo_top + 25) +
           "\" font-family=\"monospace\" font-size=\"13\">" +
           xml_escape("repositories: " + join(repos, " | ")) + "</text>\n";

    svg += "<text x=\"10\" y=\"" + std::to_string(repo_top + 62) +
           "\" font-family=\"monospace\" font-size=\"12\">" +
           xml_escape("marker: some activity of the practice runs in that stage") +
           "</text>\n";
    svg += "</svg>\n";
    return svg;
}

}  // namespace detail

/// Deterministic practice-by-stage grid: eight stage columns in
/// canonical order, one row per practice, a marker where any activity
/// of the practice is mapped to the stage, plus the repository lane.
inline S2cOverview render_s2c_overview(const ActivityCatalog& catalog) {
    {
        std::vector<std::string> pending = unclassified_ids(catalog);
        if (!pending.empty())
            throw UnclassifiedError("cannot render an overview of unclassified activities",
                                    std::move(pending));
    }
    return {detail::overview_svg(catalog), detail::overview_text(catalog)};
}

inline json overview_to_json(const ActivityCatalog& catalog) {
    json j;
    j["schema"] = "s2c-overview/1";
    j["standard_id"] = catalog.standard_id;
    json rows = json::array();
    const auto markers = practice_stage_markers(catalog);
    for (const Practice& practice : catalog.practices) {
        json row;
        row["practice"] = practice.code;
        json stages = json::array();
        auto it = markers.find(practice.code);
        if (it != markers.end())
            for (PipelineStage stage : it->second) stages.push_back(std::string(to_string(stage)));
        row["stages"] = stages;
        rows.push_back(row);
    }
    j["practices"] = rows;
    json repos = json::array();
    for (RepositoryKind kind : kRepositoryKinds) repos.push_back(std::string(to_string(kind)));
    j["repositories"] = repos;
    return j;
}

// ── Gap report ───────────────────────────────────────────────────────────

namespace detail {

struct GapReportData {
    CoverageTable table;
    std::vector<RoadmapEntry> gaps;  // roadmap order, ranks contiguous
    int potential = 0;
};

inline GapReportData gap_report_data(const AssessmentResult& result,
                                     const ActivityCatalog& catalog) {
    GapReportData data;
    data.table = coverage_report(result, catalog);

    std::set<std::string> non_gap;
    for (const auto& [id, verdict] : result.per_activity)
        if (verdict != Verdict::Gap) non_gap.insert(id);
    data.gaps = roadmap(catalog, non_gap);

    std::vector<AutomationSummary> summaries = summarize(catalog);
    data.potential = automation_potential(summaries.back());
    return data;
}

inline json gap_report_json(const AssessmentResult& result, const ActivityCatalog& catalog,
                            const GapReportData& data,
                            const std::map<std::string, std::string>& fingerprints) {
    json j;
    j["schema"] = kReportSchema;
    json prints = json::object();
    for (const auto& [name, value] : fingerprints) prints[name] = value;
    j["fingerprints"] = prints;

    json summary;
    summary["activities"] = data.table.global.total;
    summary["coverage_percent"] = result.coverage_percent;
    summary["automation_potential_percent"] = data.potential;
    json verdicts;
    verdicts["satisfied-automated"] = data.table.global.count(Verdict::SatisfiedAutomated);
    verdicts["satisfied-attested"] = data.table.global.count(Verdict::SatisfiedAttested);
    verdicts["partially-covered"] = data.table.global.count(Verdict::PartiallyCovered);
    verdicts["gap"] = data.table.global.count(Verdict::Gap);
    summary["verdicts"] = verdicts;
    j["summary"] = summary;

    json practices = json::array();
    for (const PracticeCoverageRow& row : data.table.rows) {
        json entry;
        entry["practice"] = row.practice;
        entry["satisfied-automated"] = row.count(Verdict::SatisfiedAutomated);
        entry["satisfied-attested"] = row.count(Verdict::SatisfiedAttested);
        entry["partially-covered"] = row.count(Verdict::PartiallyCovered);
        entry["gap"] = row.count(Verdict::Gap);
        entry["total"] = row.total;
        entry["coverage_percent"] = row.coverage_percent;
        practices.push_back(entry);
    }
    j["practices"] = practices;

    json gaps = json::array();
    for (const RoadmapEntry& entry : data.gaps) {
        json g;
        g["rank"] = entry.rank;
        g["activity"] = entry.activity_id;
        g["automation"] = std::string(to_string(entry.automation));
        g["rationale"] = entry.rationale;
        gaps.push_back(g);
    }
    j["gaps"] = gaps;

    json evidence = json::array();
    for (const EvidenceRef& ref : result.evidence_manifest) {
        json e;
        e["activity"] = ref.activity_id;
        e["kind"] = ref.kind;
        e["reference"] = ref.reference;
        evidence.push_back(e);
    }
    j["evidence"] = evidence;
    return j;
}

inline std::string practice_table_markdown(const CoverageTable& table) {
    std::string out =
        "| practice | satisfied-automated | satisfied-attested | partially-covered | gap | "
        "total | coverage |\n"
        "|----------|--------------------:|-------------------:|------------------:|----:|"
        "------:|---------:|\n";
    auto row_line = [](const PracticeCoverageRow& row) {
        return "| " + row.practice + " | " +
               std::to_string(row.count(Verdict::SatisfiedAutomated)) + " | " +
               std::to_string(row.count(Verdict::SatisfiedAttested)) + " | " +
               std::to_string(row.count(Verdict::PartiallyCovered)) + " | " +
               std::to_string(row.count(Verdict::Gap)) + " | " + std::to_string(row.total) +
               " | " + std::to_string(row.coverage_percent) + "% |\n";
    };
    for (const PracticeCoverageRow& row : table.rows) out += row_line(row);
    out += row_line(table.global);
    return out;
}

inline std::string practice_table_text(const CoverageTable& table) {
    std::string out = pad_right("practice", 10) + pad_left("automated", 11) +
                      pad_left("attested", 10) + pad_left("partial", 9) + pad_left("gap", 5) +
                      pad_left("total", 7) + pad_left("coverage", 10) + "\n";
    auto row_line = [](const PracticeCoverageRow& row) {
        return pad_right(row.practice, 10) +
               pad_left(std::to_string(row.count(Verdict::SatisfiedAutomated)), 11) +
               pad_left(std::to_string(row.count(Verdict::SatisfiedAttested)), 10) +
               pad_left(std::to_string(row.count(Verdict::PartiallyCovered)), 9) +
               pad_left(std::to_string(row.count(Verdict::Gap)), 5) +
               pad_left(std::to_string(row.total), 7) +
               pad_left(std::to_string(row.coverage_percent) + "%", 10) + "\n";
    };
    for (const PracticeCoverageRow& row : table.rows) out += row_line(row);
    out += row_line(table.global);
    return out;
}

}  // namespace detail

/// Renders an assessment into a gap report with four sections:
/// executive summary, per-practice coverage, gaps in roadmap order, and
/// the evidence manifest. Supported formats: Markdown, Json, PlainText.
inline ReportBundle render_gap_report(const AssessmentResult& result,
                                      const ActivityCatalog& catalog, ReportFormat format) {
    if (format == ReportFormat::Svg)
        throw FormatError("gap report has no svg rendering; use markdown, json, or text");

    detail::GapReportData data = detail::gap_report_data(result, catalog);

    ReportBundle bundle;
    bundle.format = format;
    bundle.fingerprints["catalog"] = fingerprint(catalog_to_string(catalog));
    bundle.fingerprints["assessment"] = fingerprint(result_to_json(result).dump());

    if (format == ReportFormat::Json) {
        bundle.sections.push_back(
            {"report",
             detail::gap_report_json(result, catalog, data, bundle.fingerprints).dump(2) + "\n"});
        return bundle;
    }

    std::string summary;
    summary += "catalog: " + catalog.standard_id + " (version " + catalog.version + ", " +
               std::to_string(data.table.global.total) + " activities)\n";
    summary += "coverage: " + std::to_string(result.coverage_percent) + "%\n";
    summary += "automation potential: " + std::to_string(data.potential) + "%\n";
    summary += "verdicts: " +
               std::to_string(data.table.global.count(Verdict::SatisfiedAutomated)) +
               " satisfied-automated, " +
               std::to_string(data.table.global.count(Verdict::SatisfiedAttested)) +
               " satisfied-attested, " +
               std::to_string(data.table.global.count(Verdict::PartiallyCovered)) +
               " partially-covered, " + std::to_string(data.table.global.count(Verdict::Gap)) +
               " gap\n";
    summary += "fingerprints: catalog " + bundle.fingerprints["catalog"] + ", assessment " +
               bundle.fingerprints["assessment"] + "\n";
    bundle.sections.push_back({"Executive summary", summary});

    bundle.sections.push_back({"Coverage by practice",
                               format == ReportFormat::Markdown
                                   ? detail::practice_table_markdown(data.table)
                                   : detail::practice_table_text(data.table)});

    std::string gaps;
    if (data.gaps.empty()) {
        gaps = "no gaps; every activity is covered or attested\n";
    } else {
        for (const RoadmapEntry& entry : data.gaps) {
            if (format == ReportFormat::Markdown)
                gaps += std::to_string(entry.rank) + ". `" + entry.activity_id + "` [" +
                        std::string(to_string(entry.automation)) + "]: " + entry.rationale + "\n";
            else
                gaps += pad_left(std::to_string(entry.rank), 3) + "  " +
                        pad_right(entry.activity_id, 12) + " " +
                        pad_right("[" + std::string(to_string(entry.automation)) + "]", 21) +
                        entry.rationale + "\n";
        }
    }
    bundle.sections.push_back({"Gaps in roadmap order", gaps});

    std::string evidence;
    if (result.evidence_manifest.empty()) {
        evidence = "no evidence collected\n";
    } else {
        if (format == ReportFormat::Markdown) {
            evidence += "| activity | kind | reference |\n|----------|------|-----------|\n";
            for (const EvidenceRef& ref : result.evidence_manifest)
                evidence += "| " + ref.activity_id + " | " + ref.kind + " | " + ref.reference +
                            " |\n";
        } else {
            for (const EvidenceRef& ref : result.evidence_manifest)
                evidence += pad_right(ref.activity_id, 12) + " " + pad_right(ref.kind, 12) +
                            " " + ref.reference + "\n";
        }
    }
    bundle.sections.push_back({"Evidence manifest", evidence});

    return bundle;
}

}  // namespace s2c
