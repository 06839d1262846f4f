#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "s2c/catalog.hpp"
#include "s2c/errors.hpp"
#include "s2c/util.hpp"

namespace s2c {

using json = nlohmann::ordered_json;

inline constexpr const char* kCatalogSchema = "s2c-catalog/1";

namespace detail {

inline std::string line_of_offset(const std::string& text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

/// Strict parse entry point shared by every document loader: converts
/// nlohmann's byte offset into a line/column location.
inline json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
        throw SchemaError(std::string("malformed ") + what + ": " + e.what(),
                          line_of_offset(text, offset));
    }
}

inline void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                       const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* key : allowed)
            if (it.key() == key) known = true;
        if (!known) throw SchemaError("unknown key '" + it.key() + "'", where);
    }
}

inline const json& require(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) throw SchemaError("expected an object", where);
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(std::string("missing key '") + key + "'", where);
    return *it;
}

inline std::string require_string(const json& obj, const char* key, const std::string& where) {
    const json& value = require(obj, key, where);
    if (!value.is_string())
        throw SchemaError(std::string("'") + key + "' must be a string", where);
    return value.get<std::string>();
}

inline bool require_bool(const json& obj, const char* key, const std::string& where) {
    const json& value = require(obj, key, where);
    if (!value.is_boolean())
        throw SchemaError(std::string("'") + key + "' must be a boolean", where);
    return value.get<bool>();
}

inline std::vector<std::string> string_array(const json& value, const std::string& where) {
    if (!value.is_array()) throw SchemaError("expected an array of strings", where);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < value.size(); ++i) {
        if (!value[i].is_string())
            throw SchemaError("expected a string", where + "[" + std::to_string(i) + "]");
        out.push_back(value[i].get<std::string>());
    }
    return out;
}

inline std::set<std::string> string_set(const json& value, const std::string& where) {
    std::vector<std::string> items = string_array(value, where);
    return {items.begin(), items.end()};
}

}  // namespace detail

// ── Activity (de)serialization — shared with draft fragments ─────────────

inline json activity_to_json(const Activity& act) {
    json j;
    j["id"] = act.id;
    j["practice"] = act.practice;
    j["requirement"] = act.requirement;
    j["name"] = act.name;
    j["description"] = act.description;
    j["inputs"] = act.inputs;
    j["outputs"] = act.outputs;
    j["automation"] = act.automation ? std::string(to_string(*act.automation)) : "unclassified";
    j["tools"] = act.tools;
    json stages = json::array();
    for (PipelineStage stage : act.stages) stages.push_back(std::string(to_string(stage)));
    j["stages"] = stages;
    return j;
}

inline Activity activity_from_json(const json& j, const std::string& where) {
    detail::check_keys(j,
                       {"id", "practice", "requirement", "name", "description", "inputs",
                        "outputs", "automation", "tools", "stages"},
                       where);
    Activity act;
    act.id = detail::require_string(j, "id", where);
    act.practice = detail::require_string(j, "practice", where);
    act.requirement = detail::require_string(j, "requirement", where);
    act.name = detail::require_string(j, "name", where);
    act.description = detail::require_string(j, "description", where);
    act.inputs = detail::string_set(detail::require(j, "inputs", where), where + ".inputs");
    act.outputs = detail::string_set(detail::require(j, "outputs", where), where + ".outputs");

    std::string automation = detail::require_string(j, "automation", where);
    if (automation == "unclassified") {
        act.automation = std::nullopt;
    } else {
        auto level = parse_automation_level(automation);
        if (!level)
            throw SchemaError("unknown automation level '" + automation + "'",
                              where + ".automation");
        act.automation = *level;
    }

    act.tools = detail::string_set(detail::require(j, "tools", where), where + ".tools");

    const json& stages = detail::require(j, "stages", where);
    std::vector<std::string> stage_names =
        detail::string_array(stages, where + ".stages");
    for (std::size_t i = 0; i < stage_names.size(); ++i) {
        auto stage = parse_stage(stage_names[i]);
        if (!stage)
            throw SchemaError("unknown stage '" + stage_names[i] + "'",
                              where + ".stages[" + std::to_string(i) + "]");
        act.stages.insert(*stage);
    }
    return act;
}

// ── Whole-catalog (de)serialization ──────────────────────────────────────

inline json catalog_to_json(const ActivityCatalog& input) {
    ActivityCatalog catalog = canonicalized(input);
    json j;
    j["schema"] = kCatalogSchema;
    j["standard_id"] = catalog.standard_id;
    j["version"] = catalog.version;

    json practices = json::array();
    for (const Practice& p : catalog.practices)
        practices.push_back(json{{"code", p.code}, {"name", p.name}});
    j["practices"] = practices;

    json artifacts = json::array();
    for (const Artifact& a : catalog.artifacts) {
        json entry;
        entry["name"] = a.name;
        entry["repository"] = std::string(to_string(a.repository));
        entry["description"] = a.description;
        artifacts.push_back(entry);
    }
    j["artifacts"] = artifacts;

    json tools = json::array();
    for (const ToolRef& t : catalog.tools) {
        json entry;
        entry["name"] = t.name;
        entry["categories"] = t.categories;
        entry["aliases"] = t.aliases;
        entry["open_source"] = t.open_source;
        entry["ci_integrable"] = t.ci_integrable;
        tools.push_back(entry);
    }
    j["tools"] = tools;

    json activities = json::array();
    for (const Activity& act : catalog.activities) activities.push_back(activity_to_json(act));
    j["activities"] = activities;
    return j;
}

inline ActivityCatalog catalog_from_json(const json& j) {
    detail::check_keys(
        j, {"schema", "standard_id", "version", "practices", "artifacts", "tools", "activities"},
        "catalog");
    std::string schema = detail::require_string(j, "schema", "catalog");
    if (schema != kCatalogSchema)
        throw SchemaError("unsupported schema '" + schema + "', expected '" + kCatalogSchema +
                              "'",
                          "schema");

    ActivityCatalog catalog;
    catalog.standard_id = detail::require_string(j, "standard_id", "catalog");
    catalog.version = detail::require_string(j, "version", "catalog");

    const json& practices = detail::require(j, "practices", "catalog");
    if (!practices.is_array()) throw SchemaError("'practices' must be an array", "practices");
    for (std::size_t i = 0; i < practices.size(); ++i) {
        const std::string where = "practices[" + std::to_string(i) + "]";
        detail::check_keys(practices[i], {"code", "name"}, where);
        Practice p;
        p.code = detail::require_string(practices[i], "code", where);
        p.name = detail::require_string(practices[i], "name", where);
        catalog.practices.push_back(std::move(p));
    }

    const json& artifacts = detail::require(j, "artifacts", "catalog");
    if (!artifacts.is_array()) throw SchemaError("'artifacts' must be an array", "artifacts");
    for (std::size_t i = 0; i < artifacts.size(); ++i) {
        const std::string where = "artifacts[" + std::to_string(i) + "]";
        detail::check_keys(artifacts[i], {"name", "repository", "description"}, where);
        Artifact a;
        a.name = detail::require_string(artifacts[i], "name", where);
        std::string repo = detail::require_string(artifacts[i], "repository", where);
        auto kind = parse_repository_kind(repo);
        if (!kind)
            throw SchemaError("unknown repository kind '" + repo + "'", where + ".repository");
        a.repository = *kind;
        a.description = detail::require_string(artifacts[i], "description", where);
        catalog.artifacts.push_back(std::move(a));
    }

    const json& tools = detail::require(j, "tools", "catalog");
    if (!tools.is_array()) throw SchemaError("'tools' must be an array", "tools");
    for (std::size_t i = 0; i < tools.size(); ++i) {
        const std::string where = "tools[" + std::to_string(i) + "]";
        detail::check_keys(tools[i],
                           {"name", "categories", "aliases", "open_source", "ci_integrable"},
                           where);
        ToolRef t;
        t.name = detail::require_string(tools[i], "name", where);
        t.categories = detail::string_set(detail::require(tools[i], "categories", where),
                                          where + ".categories");
        if (tools[i].contains("aliases"))
            t.aliases = detail::string_set(tools[i]["aliases"], where + ".aliases");
        t.open_source = detail::require_bool(tools[i], "open_source", where);
        t.ci_integrable = detail::require_bool(tools[i], "ci_integrable", where);
        catalog.tools.push_back(std::move(t));
    }

    const json& activities = detail::require(j, "activities", "catalog");
    if (!activities.is_array()) throw SchemaError("'activities' must be an array", "activities");
    for (std::size_t i = 0; i < activities.size(); ++i)
        catalog.activities.push_back(
            activity_from_json(activities[i], "activities[" + std::to_string(i) + "]"));

    return canonicalized(catalog);
}

/// Canonical catalog bytes: two-space indentation, defined key order,
/// activities sorted by id, trailing newline. Equal catalogs always
/// serialize to identical bytes.
inline std::string catalog_to_string(const ActivityCatalog& catalog) {
    return catalog_to_json(catalog).dump(2) + "\n";
}

inline ActivityCatalog catalog_from_string(const std::string& text) {
    ActivityCatalog catalog = catalog_from_json(detail::parse_json(text, "catalog document"));
    validate_catalog(catalog);
    return catalog;
}

/// Loads, canonicalizes, and fully validates a catalog file.
inline ActivityCatalog load_catalog(const std::string& path) {
    return catalog_from_string(read_file(path));
}

/// Validates and writes the canonical serialization.
inline void save_catalog(const ActivityCatalog& catalog, const std::string& path) {
    validate_catalog(catalog);
    write_file(path, catalog_to_string(catalog));
}

}  // namespace s2c
