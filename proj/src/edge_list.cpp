#include "osnsample/edge_list.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <unordered_map>

#include "osnsample/errors.hpp"

namespace osnsample {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Splits on spaces, tabs and CR.
std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> result;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) {
            ++i;
        }
        std::size_t j = i;
        while (j < line.size() && !is_space(line[j])) {
            ++j;
        }
        if (j > i) {
            result.push_back(line.substr(i, j - i));
        }
        i = j;
    }
    return result;
}

Label parse_label(std::string_view token, std::size_t line_no) {
    Label value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError("expected integer node id, got '" + std::string(token) + "'", line_no);
    }
    return value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (is_space(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (is_space(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

} // namespace

DirectedGraph read_edge_list(std::istream &in) {
    std::vector<std::pair<Label, Label>> raw;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto parts = tokens(line);
        if (parts.empty()) {
            continue;
        }
        if (parts.size() != 2) {
            throw ParseError("expected 'src dst', got " + std::to_string(parts.size()) + " fields",
                             line_no);
        }
        raw.emplace_back(parse_label(parts[0], line_no), parse_label(parts[1], line_no));
    }

    std::vector<Label> labels;
    labels.reserve(raw.size() * 2);
    for (const auto &[u, v] : raw) {
        labels.push_back(u);
        labels.push_back(v);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

    std::unordered_map<Label, NodeId> index;
    index.reserve(labels.size());
    for (NodeId i = 0; i < labels.size(); ++i) {
        index.emplace(labels[i], i);
    }
    std::vector<Edge> edges;
    edges.reserve(raw.size());
    for (const auto &[u, v] : raw) {
        edges.emplace_back(index.at(u), index.at(v));
    }
    return DirectedGraph(std::move(labels), edges);
}

DirectedGraph load_edge_list(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return read_edge_list(in);
}

void write_edge_list(const DirectedGraph &graph, std::ostream &out) {
    for (NodeId u = 0; u < graph.node_count(); ++u) {
        for (NodeId v : graph.out_neighbors(u)) {
            out << graph.label(u) << ' ' << graph.label(v) << '\n';
        }
    }
}

void save_edge_list(const DirectedGraph &graph, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    write_edge_list(graph, out);
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

void save_metadata(const Metadata &meta, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    for (const auto &[key, value] : meta) {
        out << key << " = " << value << '\n';
    }
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

Metadata load_metadata(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    Metadata meta;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto body = trim(line);
        if (body.empty() || body.front() == '#') {
            continue;
        }
        auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("expected 'key = value'", line_no);
        }
        meta.emplace_back(std::string(trim(body.substr(0, eq))),
                          std::string(trim(body.substr(eq + 1))));
    }
    return meta;
}

const std::string *find_value(const Metadata &meta, const std::string &key) {
    auto it = std::find_if(meta.begin(), meta.end(), [&](const auto &kv) { return kv.first == key; });
    return it == meta.end() ? nullptr : &it->second;
}

} // namespace osnsample
