#pragma once

#include <string>

#include "removal_lab/graph.hpp"

namespace rlab {

// graph6: standard printable encoding, bit-exact with the usual tooling.
std::string to_graph6(const graph& g);
graph from_graph6(const std::string& s);

// JSON record {"n": int, "edges": [[u,v], ...]}, 0-based, u < v, edges sorted
// lexicographically.  Round-trips losslessly with graph6.
std::string to_edge_json(const graph& g);
graph from_edge_json(const std::string& text);

enum class graph_format { graph6, edges };

// One graph per file.  Format detected from the content: JSON object => edge
// record, otherwise a single graph6 line.
graph load_graph_file(const std::string& path);
graph parse_graph(const std::string& text);
void save_graph_file(const std::string& path, const graph& g, graph_format fmt);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace rlab
