#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "osnsample/graph.hpp"

namespace osnsample {

/**
 * Reads a whitespace-separated "src dst" edge list, one edge per line.
 * Blank lines are skipped. Labels need not be dense; node ids are assigned
 * in ascending label order.
 *
 * Throws ParseError (with line number) on malformed lines, ValidationError
 * on self-loops or duplicate edges, IoError if the file cannot be opened.
 */
DirectedGraph load_edge_list(const std::filesystem::path &path);
DirectedGraph read_edge_list(std::istream &in);

/// Writes one "src dst" line per edge, using node labels. Isolated nodes are not representable.
void save_edge_list(const DirectedGraph &graph, const std::filesystem::path &path);
void write_edge_list(const DirectedGraph &graph, std::ostream &out);

/// Ordered "key = value" records used for sidecar metadata files.
using Metadata = std::vector<std::pair<std::string, std::string>>;

void save_metadata(const Metadata &meta, const std::filesystem::path &path);
Metadata load_metadata(const std::filesystem::path &path);

/// First value stored under `key`, or nullptr.
const std::string *find_value(const Metadata &meta, const std::string &key);

} // namespace osnsample
