#pragma once

// BPMN 2.0 subset reader: process, tasks (all subtypes collapsed),
// events, exclusive/parallel gateways, data objects, sequence flows,
// and data input/output associations. Anything else is skipped with a
// warning. Extraction turns every task/event/gateway into a draft
// activity with inputs and outputs resolved from data object labels.

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "s2c/catalog.hpp"
#include "s2c/catalog_io.hpp"
#include "s2c/errors.hpp"
#include "s2c/xml.hpp"

namespace s2c::bpmn {

enum class ElementKind { Task, Event, Gateway, DataObject };

inline std::string_view to_string(ElementKind kind) {
    switch (kind) {
        case ElementKind::Task: return "task";
        case ElementKind::Event: return "event";
        case ElementKind::Gateway: return "gateway";
        case ElementKind::DataObject: return "data-object";
    }
    return "";
}

struct BpmnElement {
    std::string id;
    ElementKind kind = ElementKind::Task;
    std::string label;

    bool operator==(const BpmnElement&) const = default;
};

struct Flow {
    std::string source;
    std::string target;

    bool operator==(const Flow&) const = default;
};

enum class Direction { Input, Output };

/// Ties an element to a data object reference. The reference is kept
/// verbatim; it is resolved to an artifact name during extraction.
struct DataAssociation {
    std::string element;
    std::string data_ref;
    Direction direction = Direction::Input;

    bool operator==(const DataAssociation&) const = default;
};

struct ProcessModel {
    std::string process_id;
    std::vector<BpmnElement> elements;  // document order
    std::vector<Flow> flows;
    std::vector<DataAssociation> data_associations;
    std::vector<std::string> warnings;

    const BpmnElement* find_element(std::string_view id) const {
        for (const BpmnElement& e : elements)
            if (e.id == id) return &e;
        return nullptr;
    }
};

namespace detail {

inline const std::map<std::string, ElementKind>& supported_elements() {
    static const std::map<std::string, ElementKind> kinds = {
        {"task", ElementKind::Task},
        {"userTask", ElementKind::Task},
        {"manualTask", ElementKind::Task},
        {"serviceTask", ElementKind::Task},
        {"scriptTask", ElementKind::Task},
        {"sendTask", ElementKind::Task},
        {"receiveTask", ElementKind::Task},
        {"businessRuleTask", ElementKind::Task},
        {"startEvent", ElementKind::Event},
        {"endEvent", ElementKind::Event},
        {"intermediateCatchEvent", ElementKind::Event},
        {"intermediateThrowEvent", ElementKind::Event},
        {"boundaryEvent", ElementKind::Event},
        {"exclusiveGateway", ElementKind::Gateway},
        {"parallelGateway", ElementKind::Gateway},
        {"dataObject", ElementKind::DataObject},
        {"dataObjectReference", ElementKind::DataObject},
    };
    return kinds;
}

// Child elements that mirror information we already capture elsewhere;
// skipping them silently keeps warnings meaningful.
inline bool ignorable(const std::string& local) {
    return local == "incoming" || local == "outgoing" || local == "documentation" ||
           local == "extensionElements" || local == "laneSet";
}

inline std::string label_of(const xml::Node& node) {
    const std::string* name = node.attr("name");
    if (name && !name->empty()) return *name;
    const std::string* id = node.attr("id");
    return id ? *id : "";
}

inline void collect_associations(const xml::Node& owner, const std::string& owner_id,
                                 ProcessModel& model) {
    for (const xml::Node& child : owner.children) {
        bool input = child.local_name == "dataInputAssociation";
        bool output = child.local_name == "dataOutputAssociation";
        if (!input && !output) continue;
        const char* ref_tag = input ? "sourceRef" : "targetRef";
        std::string ref;
        for (const xml::Node* ref_node : child.children_named(ref_tag)) {
            ref = ref_node->trimmed_text();
            if (ref.empty() && ref_node->attr("id")) ref = *ref_node->attr("id");
        }
        if (ref.empty()) {
            model.warnings.push_back("element '" + owner_id + "' has a data association without a " +
                                     ref_tag + ", skipped");
            continue;
        }
        model.data_associations.push_back(
            {owner_id, ref, input ? Direction::Input : Direction::Output});
    }
}

}  // namespace detail

/// Parses the first process element of a BPMN document. Unsupported
/// vocabulary is reported through ProcessModel::warnings, never as a
/// failure; malformed XML raises XmlError and a document without any
/// process element raises SubsetError.
inline ProcessModel parse_bpmn(std::string_view xml_bytes) {
    xml::Node root = xml::parse(xml_bytes);
    const xml::Node* process = root.first_descendant("process");
    if (!process) throw SubsetError("document contains no process element");

    ProcessModel model;
    const std::string* process_id = process->attr("id");
    model.process_id = process_id ? *process_id : "process";

    {
        // Additional processes are out of the supported subset.
        std::vector<const xml::Node*> all;
        std::vector<const xml::Node*> queue = {&root};
        while (!queue.empty()) {
            const xml::Node* node = queue.back();
            queue.pop_back();
            if (node->local_name == "process") all.push_back(node);
            for (const xml::Node& child : node->children) queue.push_back(&child);
        }
        if (all.size() > 1)
            model.warnings.push_back("document contains " + std::to_string(all.size()) +
                                     " process elements; only '" + model.process_id +
                                     "' is parsed");
    }

    std::set<std::string> seen_ids;
    std::vector<Flow> raw_flows;
    for (const xml::Node& child : process->children) {
        auto it = detail::supported_elements().find(child.local_name);
        if (it != detail::supported_elements().end()) {
            const std::string* id = child.attr("id");
            if (!id || id->empty())
                throw SubsetError("element <" + child.name + "> has no id attribute");
            if (!seen_ids.insert(*id).second)
                throw SubsetError("duplicate element id '" + *id + "'");
            model.elements.push_back({*id, it->second, detail::label_of(child)});
            if (it->second != ElementKind::DataObject)
                detail::collect_associations(child, *id, model);
            continue;
        }
        if (child.local_name == "sequenceFlow") {
            const std::string* source = child.attr("sourceRef");
            const std::string* target = child.attr("targetRef");
            if (!source || !target) {
                const std::string* id = child.attr("id");
                model.warnings.push_back("sequenceFlow '" + (id ? *id : std::string("?")) +
                                         "' lacks sourceRef/targetRef, skipped");
                continue;
            }
            raw_flows.push_back({*source, *target});
            continue;
        }
        if (!detail::ignorable(child.local_name))
            model.warnings.push_back("unsupported element <" + child.name + "> skipped");
    }

    // Flows must point at retained elements; a flow touching a skipped
    // element is dropped with a warning rather than failing the parse.
    for (const Flow& flow : raw_flows) {
        if (!seen_ids.count(flow.source) || !seen_ids.count(flow.target)) {
            model.warnings.push_back("sequence flow " + flow.source + " -> " + flow.target +
                                     " references an element outside the supported subset, skipped");
            continue;
        }
        model.flows.push_back(flow);
    }

    return model;
}

/// One draft activity per task/event/gateway, ids assigned
/// `<PRACTICE>-<t|e|g><n>` in document order per kind. Automation is the
/// unclassified sentinel and stages are left empty; both are filled in
/// by later classification and stage-mapping passes.
inline std::vector<Activity> extract_activities(const ProcessModel& model,
                                                const std::string& practice_code) {
    std::map<std::string, std::string> data_object_labels;
    for (const BpmnElement& element : model.elements)
        if (element.kind == ElementKind::DataObject)
            data_object_labels[element.id] = element.label.empty() ? element.id : element.label;

    std::vector<Activity> drafts;
    int task_count = 0, event_count = 0, gateway_count = 0;
    for (const BpmnElement& element : model.elements) {
        char kind_letter;
        int index;
        switch (element.kind) {
            case ElementKind::Task: kind_letter = 't'; index = ++task_count; break;
            case ElementKind::Event: kind_letter = 'e'; index = ++event_count; break;
            case ElementKind::Gateway: kind_letter = 'g'; index = ++gateway_count; break;
            case ElementKind::DataObject: continue;
        }

        Activity draft;
        draft.id = practice_code + "-" + kind_letter + std::to_string(index);
        draft.practice = practice_code;
        draft.requirement = model.process_id;
        draft.name = element.label.empty() ? element.id : element.label;
        draft.automation = std::nullopt;

        for (const DataAssociation& assoc : model.data_associations) {
            if (assoc.element != element.id) continue;
            auto target = data_object_labels.find(assoc.data_ref);
            if (target == data_object_labels.end())
                throw MappingError("data association of element '" + element.id +
                                       "' references missing data object",
                                   assoc.data_ref);
            if (assoc.direction == Direction::Input)
                draft.inputs.insert(target->second);
            else
                draft.outputs.insert(target->second);
        }

        drafts.push_back(std::move(draft));
    }
    return drafts;
}

/// Draft activities as a catalog JSON fragment for downstream editing.
inline json fragment_to_json(const ProcessModel& model, const std::string& practice_code,
                             const std::vector<Activity>& drafts) {
    json j;
    j["schema"] = "s2c-catalog-fragment/1";
    j["practice"] = practice_code;
    j["source_process"] = model.process_id;
    json activities = json::array();
    for (const Activity& draft : drafts) activities.push_back(activity_to_json(draft));
    j["activities"] = activities;
    return j;
}

}  // namespace s2c::bpmn
