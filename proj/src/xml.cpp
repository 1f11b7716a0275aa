#include "coanet/xml.hpp"

#include "coanet/util.hpp"

namespace coanet {

const std::string* XmlNode::attr(std::string_view key) const {
    for (const auto& [k, v] : attrs)
        if (k == key) return &v;
    return nullptr;
}

const XmlNode* XmlNode::child(std::string_view child_name) const {
    for (const auto& c : children)
        if (c.name == child_name) return &c;
    return nullptr;
}

std::vector<const XmlNode*> XmlNode::children_named(std::string_view child_name) const {
    std::vector<const XmlNode*> out;
    for (const auto& c : children)
        if (c.name == child_name) out.push_back(&c);
    return out;
}

namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;

    bool eof() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    char take() { return text[pos++]; }

    [[noreturn]] void fail(const std::string& why) const {
        throw XmlError(strf("xml error at byte %zu: %s", pos, why.c_str()));
    }

    void skip_ws() {
        while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r' || peek() == '\n')) ++pos;
    }

    bool consume(std::string_view lit) {
        if (text.substr(pos, lit.size()) == lit) {
            pos += lit.size();
            return true;
        }
        return false;
    }
};

bool is_name_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '-' || c == '_' || c == '.' || c == ':';
}

std::string parse_name(Cursor& c) {
    std::size_t start = c.pos;
    while (!c.eof() && is_name_char(c.peek())) ++c.pos;
    if (c.pos == start) c.fail("expected name");
    return std::string(c.text.substr(start, c.pos - start));
}

void append_utf8(std::string& out, unsigned long cp) {
    if (cp <= 0x7f) {
        out += static_cast<char>(cp);
    } else if (cp <= 0x7ff) {
        out += static_cast<char>(0xc0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3f));
    } else if (cp <= 0xffff) {
        out += static_cast<char>(0xe0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
        out += static_cast<char>(0x80 | (cp & 0x3f));
    } else {
        out += static_cast<char>(0xf0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3f));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
        out += static_cast<char>(0x80 | (cp & 0x3f));
    }
}

std::string parse_attr_value(Cursor& c) {
    char quote = c.take();
    if (quote != '"' && quote != '\'') c.fail("expected quoted attribute value");
    std::string out;
    while (true) {
        if (c.eof()) c.fail("unterminated attribute value");
        char ch = c.take();
        if (ch == quote) break;
        if (ch != '&') {
            out += ch;
            continue;
        }
        std::size_t semi = c.text.find(';', c.pos);
        if (semi == std::string_view::npos || semi - c.pos > 10) c.fail("bad entity");
        std::string_view ent = c.text.substr(c.pos, semi - c.pos);
        c.pos = semi + 1;
        if (ent == "amp") out += '&';
        else if (ent == "lt") out += '<';
        else if (ent == "gt") out += '>';
        else if (ent == "quot") out += '"';
        else if (ent == "apos") out += '\'';
        else if (!ent.empty() && ent[0] == '#') {
            unsigned long cp = 0;
            try {
                cp = (ent.size() > 1 && (ent[1] == 'x' || ent[1] == 'X'))
                         ? std::stoul(std::string(ent.substr(2)), nullptr, 16)
                         : std::stoul(std::string(ent.substr(1)), nullptr, 10);
            } catch (...) {
                c.fail("bad character reference");
            }
            append_utf8(out, cp);
        } else {
            c.fail("unknown entity '" + std::string(ent) + "'");
        }
    }
    return out;
}

void skip_misc(Cursor& c) {
    // whitespace, comments, declaration
    while (true) {
        c.skip_ws();
        if (c.consume("<!--")) {
            std::size_t end = c.text.find("-->", c.pos);
            if (end == std::string_view::npos) c.fail("unterminated comment");
            c.pos = end + 3;
        } else if (c.consume("<?")) {
            std::size_t end = c.text.find("?>", c.pos);
            if (end == std::string_view::npos) c.fail("unterminated declaration");
            c.pos = end + 2;
        } else {
            return;
        }
    }
}

XmlNode parse_element(Cursor& c) {
    if (c.eof() || c.take() != '<') c.fail("expected '<'");
    XmlNode node;
    node.name = parse_name(c);
    while (true) {
        c.skip_ws();
        if (c.eof()) c.fail("unterminated tag");
        if (c.consume("/>")) return node;
        if (c.consume(">")) break;
        std::string key = parse_name(c);
        c.skip_ws();
        if (!c.consume("=")) c.fail("expected '=' after attribute name");
        c.skip_ws();
        node.attrs.emplace_back(std::move(key), parse_attr_value(c));
    }
    // children until matching close tag; bare text is skipped
    while (true) {
        while (!c.eof() && c.peek() != '<') ++c.pos;
        if (c.eof()) c.fail("missing </" + node.name + ">");
        if (c.consume("<!--")) {
            std::size_t end = c.text.find("-->", c.pos);
            if (end == std::string_view::npos) c.fail("unterminated comment");
            c.pos = end + 3;
            continue;
        }
        if (c.text.substr(c.pos, 2) == "</") {
            c.pos += 2;
            std::string closing = parse_name(c);
            if (closing != node.name) c.fail("mismatched close tag </" + closing + ">");
            c.skip_ws();
            if (!c.consume(">")) c.fail("malformed close tag");
            return node;
        }
        node.children.push_back(parse_element(c));
    }
}

void escape_into(std::string& out, std::string_view value) {
    for (char ch : value) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
}

void write_node(std::string& out, const XmlNode& node, int depth) {
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += '<';
    out += node.name;
    for (const auto& [k, v] : node.attrs) {
        out += ' ';
        out += k;
        out += "=\"";
        escape_into(out, v);
        out += '"';
    }
    if (node.children.empty()) {
        out += "/>\n";
        return;
    }
    out += ">\n";
    for (const auto& child : node.children) write_node(out, child, depth + 1);
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += "</";
    out += node.name;
    out += ">\n";
}

}  // namespace

XmlNode parse_xml(std::string_view text) {
    Cursor c{text};
    skip_misc(c);
    if (c.eof()) throw XmlError("empty document");
    XmlNode root = parse_element(c);
    skip_misc(c);
    if (!c.eof()) c.fail("trailing content after root element");
    return root;
}

std::string write_xml(const XmlNode& root) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    write_node(out, root, 0);
    return out;
}

}  // namespace coanet
