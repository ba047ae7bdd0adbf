#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fractalsep/io.hpp"

namespace fractalsep {

namespace {

constexpr const char* kFormatName = "fractalsep-graph";
constexpr int kFormatVersion = 1;

}  // namespace

json bigint_to_json(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() &&
        v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return v.str();
}

json params_to_json(const FractalParams& params) {
    return json{{"d", params.d}, {"b", params.b}, {"A", params.A}, {"m", params.m}};
}

FractalParams params_from_json(const json& j) {
    return FractalParams::create(j.at("d").get<int>(), j.at("b").get<int>(),
                                 j.at("A").get<std::vector<int>>(), j.at("m").get<int>());
}

json graph_header(const LevelGraph& g) {
    json vertices = json::array();
    for (std::int64_t id = 0; id < g.n(); ++id) {
        json row = json::array();
        for (int t = 0; t < g.params.d; ++t) row.push_back(g.coord(id, t));
        vertices.push_back(std::move(row));
    }
    return json{{"format", kFormatName},
                {"version", kFormatVersion},
                {"params", params_to_json(g.params)},
                {"k", g.k},
                {"kind", g.kind},
                {"n", g.n()},
                {"edge_count", g.edge_count()},
                {"vertices", std::move(vertices)}};
}

void write_edge_list(const LevelGraph& g, std::ostream& out) {
    for (std::int64_t u = 0; u < g.n(); ++u)
        for (std::int32_t v : g.neighbors(u))
            if (v > u) out << u << ' ' << v << '\n';
}

LevelGraph graph_from_header(const json& j) {
    if (j.at("format").get<std::string>() != kFormatName)
        throw std::invalid_argument("not a graph header");
    if (j.at("version").get<int>() != kFormatVersion)
        throw std::invalid_argument("unsupported graph format version");
    FractalParams params = params_from_json(j.at("params"));
    int k = j.at("k").get<int>();
    std::string kind = j.at("kind").get<std::string>();
    const json& vertices = j.at("vertices");
    std::vector<std::int64_t> coords;
    coords.reserve(vertices.size() * params.d);
    for (const json& row : vertices) {
        if (static_cast<int>(row.size()) != params.d)
            throw std::invalid_argument("vertex row has wrong dimension");
        for (const json& c : row) coords.push_back(c.get<std::int64_t>());
    }
    LevelGraph g = LevelGraph::from_sorted_coords(std::move(params), k, std::move(coords),
                                                  std::move(kind));
    if (g.n() != j.at("n").get<std::int64_t>() ||
        g.edge_count() != j.at("edge_count").get<std::int64_t>())
        throw std::invalid_argument("graph header counts disagree with the vertex table");
    return g;
}

void save_graph(const LevelGraph& g, const std::string& stem) {
    write_text_file(stem + ".json", graph_header(g).dump(2) + "\n");
    std::ostringstream edges;
    write_edge_list(g, edges);
    write_text_file(stem + ".edges", edges.str());
}

LevelGraph load_graph(const std::string& stem) {
    json header = json::parse(read_text_file(stem + ".json"));
    LevelGraph g = graph_from_header(header);
    std::ostringstream expected;
    write_edge_list(g, expected);
    if (read_text_file(stem + ".edges") != expected.str())
        throw std::invalid_argument("edge list disagrees with the vertex table: " + stem);
    return g;
}

std::string render_svg(const LevelGraph& g, bool highlight_complete) {
    if (g.params.d != 2)
        throw std::invalid_argument("SVG rendering supports d = 2 only");
    std::int64_t side = g.side;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << side << ' ' << side
        << "\" width=\"" << side * 8 << "\" height=\"" << side * 8
        << "\" shape-rendering=\"crispEdges\">\n";
    out << "<rect width=\"" << side << "\" height=\"" << side << "\" fill=\"#ffffff\"/>\n";
    std::vector<std::int64_t> fixed(1);
    for (std::int64_t id = 0; id < g.n(); ++id) {
        std::int64_t x = g.coord(id, 0), y = g.coord(id, 1);
        const char* fill = "#1a1a1a";
        if (highlight_complete) {
            fixed[0] = y;
            bool on_complete = is_complete_line(g.params, g.k, 0, fixed);
            if (!on_complete) {
                fixed[0] = x;
                on_complete = is_complete_line(g.params, g.k, 1, fixed);
            }
            if (on_complete) fill = "#d97706";
        }
        out << "<rect x=\"" << x << "\" y=\"" << (side - 1 - y)
            << "\" width=\"1\" height=\"1\" fill=\"" << fill << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

json cut_result_to_json(const CutResult& r) {
    json cutset = json::array();
    for (const LatticePoint& p : r.cutset) cutset.push_back(p);
    json out{{"epsilon", r.epsilon},
             {"cut_size", r.cut_size()},
             {"cutset", std::move(cutset)},
             {"largest_component", r.largest_component()},
             {"proved_optimal", r.proved_optimal}};
    out["valid"] = r.valid;
    out["lex_minimal"] = r.lex_minimal;
    out["proven_lower_bound"] = r.proven_lower_bound;
    out["component_sizes"] = r.component_sizes;
    out["nodes_explored"] = r.nodes_explored;
    out["method"] = r.method;
    return out;
}

json path_system_to_json(const PathSystem& ps, const PathBound& bound) {
    return json{{"n", ps.graph ? ps.graph->n() : 0},
                {"pair_count", ps.pair_count},
                {"max_congestion", ps.max_congestion},
                {"bound", bigint_to_json(bound.value)},
                {"bound_raw", bound.raw},
                {"conditional", bound.conditional},
                {"witness_size",
                 bound.witness_size >= 0 ? json(bound.witness_size) : json(nullptr)}};
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open " + path + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace fractalsep
