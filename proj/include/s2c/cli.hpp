#pragma once

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "s2c/automation.hpp"
#include "s2c/bpmn.hpp"
#include "s2c/catalog_io.hpp"
#include "s2c/graph.hpp"
#include "s2c/pipeline.hpp"
#include "s2c/report.hpp"

namespace s2c::cli {

/// Stable exit-code contract for CI integration.
enum ExitStatus : int {
    kOk = 0,               ///< success
    kValidationError = 1,  ///< data fails validation (findings, gaps, references)
    kUsageError = 2,       ///< bad invocation or malformed document
    kIoError = 3,          ///< file cannot be read or written
};

namespace detail {

inline int exit_code_for(const Error& error) {
    if (dynamic_cast<const IoError*>(&error)) return kIoError;
    if (dynamic_cast<const ReferenceError*>(&error) ||
        dynamic_cast<const UnclassifiedError*>(&error) ||
        dynamic_cast<const MappingError*>(&error))
        return kValidationError;
    return kUsageError;
}

// Practice codes of the shipped standard instance, used to sanity-check
// the ingest-bpmn command line.
inline const std::vector<std::string>& standard_practices() {
    static const std::vector<std::string> codes = {"SM",  "SR", "SD",  "SI",
                                                   "SVV", "DM", "SUM", "SG"};
    return codes;
}

inline int run_validate(const std::string& catalog_path, const std::string& externals_path,
                        bool strict, std::ostream& out) {
    ActivityCatalog catalog;
    try {
        catalog = load_catalog(catalog_path);
    } catch (const ReferenceError& e) {
        std::vector<ValidationFinding> findings;
        for (const std::string& offender : e.offenders())
            findings.push_back(
                {Severity::Error, "UNRESOLVED_REFERENCE", offender, offender});
        out << findings_to_jsonl(findings);
        return kValidationError;
    }

    std::set<std::string> externals;
    if (!externals_path.empty()) externals = load_external_inputs(externals_path);

    OrchestrationGraph graph = build_graph(catalog, externals);
    std::vector<ValidationFinding> findings = graph.findings;
    std::vector<ValidationFinding> stage_findings = check_stage_consistency(graph, catalog);
    findings.insert(findings.end(), stage_findings.begin(), stage_findings.end());
    sort_findings(findings);
    out << findings_to_jsonl(findings);

    bool any_error = false, any_warning = false;
    for (const ValidationFinding& finding : findings) {
        any_error |= finding.severity == Severity::Error;
        any_warning |= finding.severity == Severity::Warning;
    }
    if (any_error || (strict && any_warning)) return kValidationError;
    return kOk;
}

inline int run_stats(const std::string& catalog_path, const std::string& format,
                     std::ostream& out) {
    ActivityCatalog catalog = load_catalog(catalog_path);
    std::vector<AutomationSummary> summaries = summarize(catalog);
    if (format == "json")
        out << summaries_to_json(summaries).dump(2) << "\n";
    else
        out << summaries_to_text(summaries);
    return kOk;
}

inline int run_assess(const std::string& catalog_path, const std::string& pipeline_path,
                      const std::string& attestations_path, const std::string& out_dir,
                      int min_coverage, const std::string& format, std::ostream& out) {
    ActivityCatalog catalog = load_catalog(catalog_path);
    PipelineModel pipeline = parse_pipeline(pipeline_path);
    std::vector<Attestation> attestations;
    if (!attestations_path.empty()) attestations = load_attestations(attestations_path);

    AssessmentResult result = assess(pipeline, catalog, attestations);
    ReportBundle report_json = render_gap_report(result, catalog, ReportFormat::Json);
    ReportBundle report_md = render_gap_report(result, catalog, ReportFormat::Markdown);
    S2cOverview overview = render_s2c_overview(catalog);

    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());
    const std::string json_path = (fs::path(out_dir) / "gap-report.json").string();
    const std::string md_path = (fs::path(out_dir) / "gap-report.md").string();
    const std::string svg_path = (fs::path(out_dir) / "s2c-overview.svg").string();
    write_file(json_path, report_json.assembled());
    write_file(md_path, report_md.assembled());
    write_file(svg_path, overview.svg);

    if (format == "json") {
        json j;
        j["schema"] = "s2c-assess-cli/1";
        j["pipeline"] = pipeline.name;
        j["coverage_percent"] = result.coverage_percent;
        j["reports"] = json::array({json_path, md_path, svg_path});
        out << j.dump(2) << "\n";
    } else {
        out << "assessed pipeline '" << pipeline.name << "' against " << catalog.standard_id
            << ": coverage " << result.coverage_percent << "%\n";
        out << "reports: " << json_path << ", " << md_path << ", " << svg_path << "\n";
    }

    if (result.coverage_percent < min_coverage) return kValidationError;
    return kOk;
}

inline int run_ingest(const std::string& bpmn_path, const std::string& practice,
                      const std::string& format, std::ostream& out, std::ostream& err) {
    const std::vector<std::string>& codes = standard_practices();
    if (std::find(codes.begin(), codes.end(), practice) == codes.end())
        throw FilterError("unknown practice code '" + practice +
                          "'; valid codes: " + join(codes, ", "));

    bpmn::ProcessModel model = bpmn::parse_bpmn(read_file(bpmn_path));
    for (const std::string& warning : model.warnings) err << "warning: " << warning << "\n";
    std::vector<Activity> drafts = bpmn::extract_activities(model, practice);

    if (format == "text") {
        out << "process '" << model.process_id << "': " << drafts.size() << " draft activities\n";
        for (const Activity& draft : drafts) {
            std::vector<std::string> in(draft.inputs.begin(), draft.inputs.end());
            std::vector<std::string> produced(draft.outputs.begin(), draft.outputs.end());
            out << "  " << pad_right(draft.id, 10) << pad_right(draft.name, 44)
                << "in: " << join(in, ", ") << "  out: " << join(produced, ", ") << "\n";
        }
    } else {
        out << bpmn::fragment_to_json(model, practice, drafts).dump(2) << "\n";
    }
    return kOk;
}

inline int run_roadmap(const std::string& catalog_path,
                       const std::vector<std::string>& exclude, const std::string& format,
                       std::ostream& out) {
    ActivityCatalog catalog = load_catalog(catalog_path);
    std::set<std::string> excluded(exclude.begin(), exclude.end());
    std::vector<RoadmapEntry> entries = roadmap(catalog, excluded);
    if (format == "json") {
        out << roadmap_to_json(entries).dump(2) << "\n";
    } else {
        for (const RoadmapEntry& entry : entries)
            out << pad_left(std::to_string(entry.rank), 3) << "  "
                << pad_right(entry.activity_id, 12)
                << pad_right("[" + std::string(to_string(entry.automation)) + "]", 21)
                << entry.rationale << "\n";
    }
    return kOk;
}

inline int run_render(const std::string& catalog_path, const std::string& format,
                      const std::string& out_file, std::ostream& out) {
    ActivityCatalog catalog = load_catalog(catalog_path);
    std::string rendered;
    if (format == "json") {
        rendered = overview_to_json(catalog).dump(2) + "\n";
    } else {
        S2cOverview overview = render_s2c_overview(catalog);
        rendered = format == "svg" ? overview.svg : overview.text;
    }
    if (out_file.empty())
        out << rendered;
    else
        write_file(out_file, rendered);
    return kOk;
}

}  // namespace detail

/// Entry point behind the s2c binary; kept separate so tests can drive
/// the full command surface in process.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"compliance-as-code engine for security-standard activity catalogs"};
    app.name("s2c");
    app.require_subcommand(1);

    std::string catalog_path, externals_path, pipeline_path, attestations_path;
    std::string bpmn_path, practice, out_dir = ".", out_file, format;
    std::vector<std::string> exclude;
    bool strict = false;
    int min_coverage = 0;

    CLI::App* validate = app.add_subcommand(
        "validate", "check a catalog's orchestration flow; findings as JSON lines");
    validate->add_option("catalog", catalog_path, "catalog JSON file")->required();
    validate->add_option("--external-inputs", externals_path,
                         "sidecar JSON list of boundary artifacts");
    validate->add_flag("--strict", strict, "treat warnings as errors");
    validate->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json"}));

    CLI::App* stats = app.add_subcommand("stats", "automation-capability statistics");
    stats->add_option("catalog", catalog_path, "catalog JSON file")->required();
    stats->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* assess_cmd =
        app.add_subcommand("assess", "assess a CI/CD pipeline against a catalog");
    assess_cmd->add_option("catalog", catalog_path, "catalog JSON file")->required();
    assess_cmd->add_option("pipeline", pipeline_path, "normalized pipeline file (YAML or JSON)")
        ->required();
    assess_cmd->add_option("--attestations", attestations_path, "attestations JSON file");
    assess_cmd->add_option("--out", out_dir, "directory for the report files");
    assess_cmd->add_option("--min-coverage", min_coverage,
                           "exit 1 when coverage percent is below this threshold");
    assess_cmd->add_option("--format", format, "stdout format")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* ingest = app.add_subcommand(
        "ingest-bpmn", "extract draft activities from a BPMN process model");
    ingest->add_option("bpmn", bpmn_path, "BPMN 2.0 XML file")->required();
    ingest->add_option("practice", practice, "practice code for the draft ids")->required();
    ingest->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* roadmap_cmd =
        app.add_subcommand("roadmap", "improvement roadmap ordered by automation level");
    roadmap_cmd->add_option("catalog", catalog_path, "catalog JSON file")->required();
    roadmap_cmd->add_option("--exclude", exclude, "activity ids to leave out");
    roadmap_cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* render =
        app.add_subcommand("render", "render the practice-by-stage pipeline overview");
    render->add_option("catalog", catalog_path, "catalog JSON file")->required();
    render->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"svg", "text", "json"}));
    render->add_option("--out", out_file, "write to a file instead of stdout");

    std::reverse(args.begin(), args.end());  // CLI11's vector parse wants reversed args
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (validate->parsed())
            return detail::run_validate(catalog_path, externals_path, strict, out);
        if (stats->parsed())
            return detail::run_stats(catalog_path, format.empty() ? "text" : format, out);
        if (assess_cmd->parsed())
            return detail::run_assess(catalog_path, pipeline_path, attestations_path, out_dir,
                                      min_coverage, format.empty() ? "text" : format, out);
        if (ingest->parsed())
            return detail::run_ingest(bpmn_path, practice, format.empty() ? "json" : format,
                                      out, err);
        if (roadmap_cmd->parsed())
            return detail::run_roadmap(catalog_path, exclude,
                                       format.empty() ? "text" : format, out);
        if (render->parsed())
            return detail::run_render(catalog_path, format.empty() ? "text" : format, out_file,
                                      out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return detail::exit_code_for(e);
    }
    return kUsageError;
}

}  // namespace s2c::cli
