#include "osnsample/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>

#include "osnsample/errors.hpp"

namespace osnsample {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace

const std::string *ConfigDocument::Section::find(std::string_view key) const {
    for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
        if (it->key == key) {
            return &it->value;
        }
    }
    return nullptr;
}

ConfigDocument ConfigDocument::parse(std::istream &in) {
    ConfigDocument doc;
    doc.sections_.push_back({"", {}});
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto line = trim(raw);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = trim(line.substr(0, hash));
        }
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw ParseError("malformed section header", line_no);
            }
            doc.sections_.push_back({std::string(trim(line.substr(1, line.size() - 2))), {}});
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("expected 'key = value'", line_no);
        }
        auto key = trim(line.substr(0, eq));
        if (key.empty()) {
            throw ParseError("empty key", line_no);
        }
        doc.sections_.back().entries.push_back(
            {std::string(key), std::string(trim(line.substr(eq + 1))), line_no});
    }
    return doc;
}

ConfigDocument ConfigDocument::load(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config " + path.string());
    }
    return parse(in);
}

const std::string *ConfigDocument::find(std::string_view section, std::string_view key) const {
    for (auto it = sections_.rbegin(); it != sections_.rend(); ++it) {
        if (it->name == section) {
            if (const auto *value = it->find(key)) {
                return value;
            }
        }
    }
    return nullptr;
}

ConfigDocument::Section &ConfigDocument::section_block(std::string_view name) {
    for (auto it = sections_.rbegin(); it != sections_.rend(); ++it) {
        if (it->name == name) {
            return *it;
        }
    }
    sections_.push_back({std::string(name), {}});
    return sections_.back();
}

void ConfigDocument::apply_override(std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ParameterError("override must look like section.key=value: '" +
                             std::string(assignment) + "'");
    }
    const auto path = trim(assignment.substr(0, eq));
    const auto value = std::string(trim(assignment.substr(eq + 1)));
    const auto dot = path.rfind('.');
    const auto section = dot == std::string_view::npos ? std::string_view{} : path.substr(0, dot);
    const auto key = dot == std::string_view::npos ? path : path.substr(dot + 1);
    if (key.empty()) {
        throw ParameterError("override has an empty key");
    }
    auto &block = section_block(section);
    for (auto &entry : block.entries) {
        if (entry.key == key) {
            entry.value = value;
            return;
        }
    }
    block.entries.push_back({std::string(key), value, 0});
}

double parse_double(std::string_view text, std::string_view what) {
    try {
        std::size_t used = 0;
        const std::string s(trim(text));
        const double value = std::stod(s, &used);
        if (used == s.size()) {
            return value;
        }
    } catch (const std::exception &) {
    }
    throw ParameterError(std::string(what) + ": expected a number, got '" + std::string(text) +
                         "'");
}

std::uint64_t parse_uint(std::string_view text, std::string_view what) {
    text = trim(text);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ParameterError(std::string(what) + ": expected a non-negative integer, got '" +
                             std::string(text) + "'");
    }
    return value;
}

bool parse_bool(std::string_view text, std::string_view what) {
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no") {
        return false;
    }
    throw ParameterError(std::string(what) + ": expected true/false, got '" + std::string(text) +
                         "'");
}

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> items;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(',', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        auto item = trim(text.substr(start, end - start));
        if (!item.empty()) {
            items.emplace_back(item);
        }
        start = end + 1;
    }
    return items;
}

} // namespace osnsample
