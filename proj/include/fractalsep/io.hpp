#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "fractalsep/graph.hpp"
#include "fractalsep/paths.hpp"
#include "fractalsep/separation.hpp"

namespace fractalsep {

using json = nlohmann::ordered_json;

json params_to_json(const FractalParams& params);
FractalParams params_from_json(const json& j);

// Integers that fit int64 stay numeric; anything wider degrades to a string.
json bigint_to_json(const BigInt& v);

// Header with params, level, kind, and the coordinate table in canonical
// (lexicographic) order.  Edges live in a separate plain-text list, one
// "u v" pair per line with u < v, sorted.
json graph_header(const LevelGraph& g);
void write_edge_list(const LevelGraph& g, std::ostream& out);

// Rebuilds the graph from a header; the edge list is only cross-checked
// (adjacency is recomputed from coordinates, which the format determines).
LevelGraph graph_from_header(const json& j);

// stem.json + stem.edges.
void save_graph(const LevelGraph& g, const std::string& stem);
LevelGraph load_graph(const std::string& stem);

// One filled unit square per vertex, origin at the bottom-left, d = 2 only.
// highlight_complete paints cells of the complete-lines subgraph in a second
// fill.  Output is byte-stable for fixed inputs.
std::string render_svg(const LevelGraph& g, bool highlight_complete = false);

json cut_result_to_json(const CutResult& r);
json path_system_to_json(const PathSystem& ps, const PathBound& bound);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace fractalsep
