#pragma once

// Small non-validating XML parser covering the vocabulary that BPMN
// exports (and SVG) actually use: elements, attributes, character data,
// CDATA, comments, processing instructions, the five predefined
// entities, and numeric character references. Errors carry the byte
// offset of the problem. DOCTYPE internal subsets are not supported.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "s2c/errors.hpp"

namespace s2c::xml {

struct Node {
    std::string name;        ///< qualified name as written, e.g. "bpmn:task"
    std::string local_name;  ///< name with any prefix stripped
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<Node> children;
    std::string text;        ///< concatenated character data of this element
    std::size_t offset = 0;  ///< byte offset of the start tag

    const std::string* attr(std::string_view key) const {
        for (const auto& [k, v] : attributes)
            if (k == key) return &v;
        return nullptr;
    }

    std::string trimmed_text() const {
        std::size_t begin = text.find_first_not_of(" \t\r\n");
        if (begin == std::string::npos) return "";
        std::size_t end = text.find_last_not_of(" \t\r\n");
        return text.substr(begin, end - begin + 1);
    }

    /// Direct children with the given local name.
    std::vector<const Node*> children_named(std::string_view local) const {
        std::vector<const Node*> out;
        for (const Node& child : children)
            if (child.local_name == local) out.push_back(&child);
        return out;
    }

    /// First element in document order (self included) with the local name.
    const Node* first_descendant(std::string_view local) const {
        if (local_name == local) return this;
        for (const Node& child : children)
            if (const Node* hit = child.first_descendant(local)) return hit;
        return nullptr;
    }
};

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view input) : in_(input) {}

    Node run() {
        skip_bom();
        skip_misc(/*allow_doctype=*/true);
        if (eof()) fail("document has no root element");
        if (peek() != '<') fail("expected '<'");
        Node root = parse_element(0);
        skip_misc(/*allow_doctype=*/false);
        if (!eof()) fail("content after document element");
        return root;
    }

private:
    static constexpr int kMaxDepth = 200;

    std::string_view in_;
    std::size_t pos_ = 0;

    bool eof() const { return pos_ >= in_.size(); }
    char peek() const { return in_[pos_]; }

    [[noreturn]] void fail(const std::string& message) const {
        throw XmlError(message, pos_);
    }

    char next() {
        if (eof()) fail("unexpected end of input");
        return in_[pos_++];
    }

    bool starts_with(std::string_view prefix) const {
        return in_.substr(pos_, prefix.size()) == prefix;
    }

    void expect(std::string_view token) {
        if (!starts_with(token)) fail("expected '" + std::string(token) + "'");
        pos_ += token.size();
    }

    void skip_bom() {
        if (starts_with("\xEF\xBB\xBF")) pos_ += 3;
    }

    static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

    void skip_ws() {
        while (!eof() && is_space(peek())) ++pos_;
    }

    static bool is_name_start(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == ':' ||
               static_cast<unsigned char>(c) >= 0x80;
    }

    static bool is_name_char(char c) {
        return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
    }

    std::string parse_name() {
        if (eof() || !is_name_start(peek())) fail("expected a name");
        std::size_t begin = pos_;
        while (!eof() && is_name_char(peek())) ++pos_;
        return std::string(in_.substr(begin, pos_ - begin));
    }

    void skip_until(std::string_view token, const char* what) {
        std::size_t hit = in_.find(token, pos_);
        if (hit == std::string_view::npos) {
            pos_ = in_.size();
            fail(std::string("unterminated ") + what);
        }
        pos_ = hit + token.size();
    }

    /// Comments, processing instructions, whitespace; optionally one DOCTYPE.
    void skip_misc(bool allow_doctype) {
        for (;;) {
            skip_ws();
            if (starts_with("<!--")) {
                pos_ += 4;
                skip_until("-->", "comment");
            } else if (starts_with("<?")) {
                pos_ += 2;
                skip_until("?>", "processing instruction");
            } else if (allow_doctype && starts_with("<!DOCTYPE")) {
                while (!eof() && peek() != '>') {
                    if (peek() == '[') fail("DOCTYPE internal subsets are not supported");
                    ++pos_;
                }
                if (eof()) fail("unterminated DOCTYPE");
                ++pos_;
            } else {
                return;
            }
        }
    }

    void append_codepoint(std::string& out, unsigned long cp) {
        if (cp > 0x10FFFF) fail("character reference out of range");
        if (cp < 0x80) {
            out += static_cast<char>(cp);
        } else if (cp < 0x800) {
            out += static_cast<char>(0xC0 | (cp >> 6));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else if (cp < 0x10000) {
            out += static_cast<char>(0xE0 | (cp >> 12));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else {
            out += static_cast<char>(0xF0 | (cp >> 18));
            out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        }
    }

    void parse_entity(std::string& out) {
        ++pos_;  // consume '&'
        std::size_t end = in_.find(';', pos_);
        if (end == std::string_view::npos) fail("unterminated entity reference");
        std::string_view body = in_.substr(pos_, end - pos_);
        if (body == "lt") {
            out += '<';
        } else if (body == "gt") {
            out += '>';
        } else if (body == "amp") {
            out += '&';
        } else if (body == "apos") {
            out += '\'';
        } else if (body == "quot") {
            out += '"';
        } else if (!body.empty() && body[0] == '#') {
            bool hex = body.size() > 1 && (body[1] == 'x' || body[1] == 'X');
            std::string_view digits = body.substr(hex ? 2 : 1);
            if (digits.empty()) fail("empty character reference");
            unsigned long cp = 0;
            for (char c : digits) {
                int digit;
                if (c >= '0' && c <= '9') digit = c - '0';
                else if (hex && c >= 'a' && c <= 'f') digit = c - 'a' + 10;
                else if (hex && c >= 'A' && c <= 'F') digit = c - 'A' + 10;
                else { fail("invalid character reference"); }
                cp = cp * (hex ? 16 : 10) + static_cast<unsigned long>(digit);
                if (cp > 0x10FFFF) fail("character reference out of range");
            }
            append_codepoint(out, cp);
        } else {
            fail("unknown entity '&" + std::string(body) + ";'");
        }
        pos_ = end + 1;
    }

    std::string parse_attribute_value() {
        char quote = next();
        if (quote != '"' && quote != '\'') {
            --pos_;
            fail("attribute value must be quoted");
        }
        std::string value;
        for (;;) {
            if (eof()) fail("unterminated attribute value");
            char c = peek();
            if (c == quote) {
                ++pos_;
                return value;
            }
            if (c == '<') fail("'<' not allowed in attribute value");
            if (c == '&') {
                parse_entity(value);
            } else {
                value += c;
                ++pos_;
            }
        }
    }

    static std::string local_part(const std::string& qname) {
        std::size_t colon = qname.rfind(':');
        return colon == std::string::npos ? qname : qname.substr(colon + 1);
    }

    Node parse_element(int depth) {
        if (depth > kMaxDepth) fail("element nesting too deep");
        Node node;
        node.offset = pos_;
        expect("<");
        node.name = parse_name();
        node.local_name = local_part(node.name);

        for (;;) {
            bool had_space = !eof() && is_space(peek());
            skip_ws();
            if (eof()) fail("unexpected end of input in start tag");
            if (starts_with("/>")) {
                pos_ += 2;
                return node;
            }
            if (peek() == '>') {
                ++pos_;
                break;
            }
            if (!had_space) fail("expected whitespace before attribute");
            std::string key = parse_name();
            skip_ws();
            expect("=");
            skip_ws();
            for (const auto& [existing, _] : node.attributes)
                if (existing == key) fail("duplicate attribute '" + key + "'");
            node.attributes.emplace_back(key, parse_attribute_value());
        }

        // Content loop until the matching end tag.
        for (;;) {
            if (eof()) fail("unexpected end of input, unclosed element '" + node.name + "'");
            if (starts_with("</")) {
                pos_ += 2;
                std::string closing = parse_name();
                if (closing != node.name)
                    fail("mismatched end tag '" + closing + "', expected '" + node.name + "'");
                skip_ws();
                expect(">");
                return node;
            }
            if (starts_with("<!--")) {
                pos_ += 4;
                skip_until("-->", "comment");
            } else if (starts_with("<![CDATA[")) {
                pos_ += 9;
                std::size_t end = in_.find("]]>", pos_);
                if (end == std::string_view::npos) {
                    pos_ = in_.size();
                    fail("unterminated CDATA section");
                }
                node.text.append(in_.substr(pos_, end - pos_));
                pos_ = end + 3;
            } else if (starts_with("<?")) {
                pos_ += 2;
                skip_until("?>", "processing instruction");
            } else if (peek() == '<') {
                node.children.push_back(parse_element(depth + 1));
            } else if (peek() == '&') {
                parse_entity(node.text);
            } else {
                node.text += next();
            }
        }
    }
};

}  // namespace detail

/// Parses a complete document and returns its root element.
inline Node parse(std::string_view input) {
    return detail::Parser(input).run();
}

}  // namespace s2c::xml
