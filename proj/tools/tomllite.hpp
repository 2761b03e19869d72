#pragma once

// Minimal flat TOML reader: `key = value` pairs with string, integer,
// float, boolean and one-level array values, plus # comments. Enough for
// run configs; tables/sections are rejected loudly.

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace tomllite {

inline std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline nlohmann::json parse_scalar(const std::string& tok) {
    if (tok.empty()) throw std::invalid_argument("toml: empty value");
    if (tok.front() == '"') {
        if (tok.size() < 2 || tok.back() != '"') throw std::invalid_argument("toml: unterminated string");
        return tok.substr(1, tok.size() - 2);
    }
    if (tok == "true") return true;
    if (tok == "false") return false;
    bool is_float = tok.find('.') != std::string::npos || tok.find('e') != std::string::npos ||
                    tok.find('E') != std::string::npos;
    try {
        if (is_float) return std::stod(tok);
        return static_cast<long long>(std::stoll(tok));
    } catch (const std::exception&) {
        throw std::invalid_argument("toml: cannot parse value '" + tok + "'");
    }
}

inline nlohmann::json parse_value(const std::string& raw) {
    std::string v = trim(raw);
    if (!v.empty() && v.front() == '[') {
        if (v.back() != ']') throw std::invalid_argument("toml: unterminated array");
        nlohmann::json arr = nlohmann::json::array();
        std::string inner = v.substr(1, v.size() - 2);
        std::string cur;
        bool in_str = false;
        for (char c : inner) {
            if (c == '"') in_str = !in_str;
            if (c == ',' && !in_str) {
                if (!trim(cur).empty()) arr.push_back(parse_scalar(trim(cur)));
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!trim(cur).empty()) arr.push_back(parse_scalar(trim(cur)));
        return arr;
    }
    return parse_scalar(v);
}

inline nlohmann::json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("toml: cannot open " + path);
    nlohmann::json out = nlohmann::json::object();
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // strip comments outside strings
        std::string stripped;
        bool in_str = false;
        for (char c : line) {
            if (c == '"') in_str = !in_str;
            if (c == '#' && !in_str) break;
            stripped += c;
        }
        stripped = trim(stripped);
        if (stripped.empty()) continue;
        if (stripped.front() == '[')
            throw std::invalid_argument("toml: tables are not supported (line " +
                                        std::to_string(lineno) + ")");
        size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("toml: expected key = value at line " + std::to_string(lineno));
        std::string key = trim(stripped.substr(0, eq));
        if (key.empty()) throw std::invalid_argument("toml: empty key at line " + std::to_string(lineno));
        out[key] = parse_value(stripped.substr(eq + 1));
    }
    return out;
}

}  // namespace tomllite
