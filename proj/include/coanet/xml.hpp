#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace coanet {

struct XmlError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Element tree for the small XML subset used by the record files: elements,
// attributes, self-closing tags, comments, an optional declaration, and the
// five predefined entities plus numeric character references in attribute
// values. Text content between elements is ignored; all data rides on
// attributes.
struct XmlNode {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attrs;
    std::vector<XmlNode> children;

    const std::string* attr(std::string_view key) const;
    const XmlNode* child(std::string_view child_name) const;
    std::vector<const XmlNode*> children_named(std::string_view child_name) const;
};

XmlNode parse_xml(std::string_view text);
std::string write_xml(const XmlNode& root);

}  // namespace coanet
