#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace s2c {

/// Base class for every error the engine raises deliberately.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Filesystem-level failure: unreadable input, unwritable output.
class IoError : public Error {
public:
    explicit IoError(const std::string& message) : Error(message) {}
};

/// Document violates the expected schema or a structural invariant.
/// `location` points at the offending line or field when known.
class SchemaError : public Error {
public:
    SchemaError(const std::string& message, std::string location = "")
        : Error(location.empty() ? message : location + ": " + message),
          location_(std::move(location)) {}

    const std::string& location() const { return location_; }

private:
    std::string location_;
};

/// A name mentioned somewhere does not resolve to a declared entry.
/// Carries every offender so callers can report them all at once.
class ReferenceError : public Error {
public:
    ReferenceError(const std::string& message, std::vector<std::string> offenders)
        : Error(compose(message, offenders)), offenders_(std::move(offenders)) {}

    const std::vector<std::string>& offenders() const { return offenders_; }

private:
    static std::string compose(const std::string& message,
                               const std::vector<std::string>& offenders) {
        std::string out = message;
        for (std::size_t i = 0; i < offenders.size(); ++i) {
            out += (i == 0 ? ": " : "; ");
            out += offenders[i];
        }
        return out;
    }

    std::vector<std::string> offenders_;
};

/// Query filter names an unknown practice code, stage, or level.
class FilterError : public Error {
public:
    explicit FilterError(const std::string& message) : Error(message) {}
};

/// Malformed XML. `offset` is the byte position of the problem.
class XmlError : public Error {
public:
    XmlError(const std::string& message, std::size_t offset)
        : Error(message + " at byte " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Well-formed XML that falls outside the supported BPMN subset
/// (no process element, duplicate or missing ids).
class SubsetError : public Error {
public:
    explicit SubsetError(const std::string& message) : Error(message) {}
};

/// A data association points at something that is not a data object.
class MappingError : public Error {
public:
    MappingError(const std::string& message, std::string reference)
        : Error(message + " '" + reference + "'"), reference_(std::move(reference)) {}

    const std::string& reference() const { return reference_; }

private:
    std::string reference_;
};

/// Pipeline document names a stage that cannot be mapped onto the
/// canonical eight.
class StageError : public Error {
public:
    explicit StageError(const std::string& message) : Error(message) {}
};

/// Activities still carry the "unclassified" sentinel where a
/// classification is required. Lists every offending id.
class UnclassifiedError : public Error {
public:
    UnclassifiedError(const std::string& message, std::vector<std::string> ids)
        : Error(compose(message, ids)), ids_(std::move(ids)) {}

    const std::vector<std::string>& ids() const { return ids_; }

private:
    static std::string compose(const std::string& message,
                               const std::vector<std::string>& ids) {
        std::string out = message;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            out += (i == 0 ? ": " : ", ");
            out += ids[i];
        }
        return out;
    }

    std::vector<std::string> ids_;
};

/// Requested report format is not supported by the renderer.
class FormatError : public Error {
public:
    explicit FormatError(const std::string& message) : Error(message) {}
};

}  // namespace s2c
