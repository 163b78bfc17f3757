#include "isoquat/instance.hpp"

#include <cctype>
#include <sstream>

namespace isoquat {

namespace {

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string lower(std::string s) {
    for (char& c : s) c = char(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

int bracket_balance(const std::string& s) {
    int bal = 0;
    for (char c : s) {
        if (c == '[' || c == '(') ++bal;
        if (c == ']' || c == ')') --bal;
    }
    return bal;
}

} // namespace

RawInstance scan_instance_text(const std::string& text) {
    RawInstance raw;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = trim(strip_comment(line));
        if (body.empty()) continue;
        if (body.front() == '[') {
            if (body.back() != ']') throw ParseError(lineno, 1, "unterminated section header");
            section = lower(trim(body.substr(1, body.size() - 2)));
            if (section.empty()) throw ParseError(lineno, 1, "empty section name");
            if (raw.sections.count(section)) throw ParseError(lineno, 1, "duplicate section [" + section + "]");
            raw.sections[section];
            continue;
        }
        auto eq = body.find('=');
        if (eq == std::string::npos) throw ParseError(lineno, 1, "expected 'key = value'");
        if (section.empty()) throw ParseError(lineno, 1, "entry outside of any [section]");
        std::string key = lower(trim(body.substr(0, eq)));
        if (key.empty()) throw ParseError(lineno, 1, "empty key");
        std::string value = trim(body.substr(eq + 1));
        int start_line = lineno;
        int col = int(line.find('=') + 2);

        // A value with open brackets continues on the following lines.
        int bal = bracket_balance(value);
        while (bal > 0 && std::getline(in, line)) {
            ++lineno;
            std::string more = trim(strip_comment(line));
            value += " " + more;
            bal += bracket_balance(more);
        }
        if (bal != 0) throw ParseError(start_line, col, "unbalanced brackets in value");

        auto& sec = raw.sections[section];
        if (sec.count(key)) throw ParseError(start_line, 1, "duplicate key '" + key + "'");
        sec[key] = RawEntry{value, start_line, col};
    }
    return raw;
}

} // namespace isoquat
