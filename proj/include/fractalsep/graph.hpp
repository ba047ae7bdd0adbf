#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fractalsep/counting.hpp"
#include "fractalsep/params.hpp"

namespace fractalsep {

// Thrown when a requested enumeration would exceed the vertex budget.
// would_be holds the predicted size (exact for level graphs, an upper
// estimate for line unions and cones).
struct budget_error : std::runtime_error {
    BigInt would_be;
    budget_error(std::string what, BigInt size)
        : std::runtime_error(std::move(what)), would_be(std::move(size)) {}
};

using LatticePoint = std::vector<std::int64_t>;

constexpr std::int64_t kDefaultVertexBudget = 2'000'000;

// A finite graph on lattice points of [0, b^k)^d.  Vertices are stored in
// strictly increasing lexicographic coordinate order; dense ids are positions
// in that order.  Adjacency is CSR, symmetric, loop-free, and every edge
// joins points at L1 distance 1.
class LevelGraph {
  public:
    FractalParams params;
    int k = 0;
    std::int64_t side = 1;    // b^k
    std::string kind = "level";  // "level", "complete-lines" or "induced"

    std::int64_t n() const { return static_cast<std::int64_t>(offsets_.size()) - 1; }
    std::int64_t edge_count() const { return static_cast<std::int64_t>(adj_.size()) / 2; }

    LatticePoint point(std::int64_t id) const;
    std::int64_t coord(std::int64_t id, int axis) const {
        return coords_[id * params.d + axis];
    }
    std::optional<std::int32_t> find(const LatticePoint& p) const;
    std::span<const std::int32_t> neighbors(std::int64_t id) const {
        return {adj_.data() + offsets_[id], adj_.data() + offsets_[id + 1]};
    }
    std::int64_t degree(std::int64_t id) const { return offsets_[id + 1] - offsets_[id]; }
    int max_degree() const { return max_degree_; }

    // Construction helper: takes lexicographically sorted coordinate rows and
    // wires L1 adjacency between present pairs.  Validates sortedness.
    static LevelGraph from_sorted_coords(FractalParams params, int k,
                                         std::vector<std::int64_t> coords, std::string kind);

    bool same_vertices_and_edges(const LevelGraph& other) const {
        return coords_ == other.coords_ && adj_ == other.adj_ && offsets_ == other.offsets_;
    }

    const std::vector<std::int64_t>& raw_coords() const { return coords_; }

  private:
    std::vector<std::int64_t> coords_;    // n * d, row per vertex
    std::vector<std::int64_t> offsets_;   // n + 1
    std::vector<std::int32_t> adj_;
    std::vector<std::uint64_t> keys_;     // packed rows when side^d fits 64 bits
    int max_degree_ = 0;
    bool packable_ = false;

    void build_index();
    friend LevelGraph build_level_graph(const FractalParams&, int, std::int64_t);
};

// True iff every base-b digit column of p (positions 0..k-1) has at most m
// coordinates with a digit from A.  Throws std::invalid_argument when p has
// the wrong arity or a coordinate outside [0, b^k).
bool is_vertex(const FractalParams& params, int k, const LatticePoint& p);

// True iff the axis line {x_axis = t} with the remaining coordinates fixed
// (index order, axis omitted) lies entirely in the level-k graph.  Holds
// exactly when every digit column of the fixed coordinates has at most m-1
// digits from A; with A empty every line is complete.
bool is_complete_line(const FractalParams& params, int k, int axis,
                      const std::vector<std::int64_t>& fixed);

// All points whose digit columns are admissible, edges between L1-distance-1
// pairs.  Enumerates admissible column sequences (M^k work, never b^{kd}).
LevelGraph build_level_graph(const FractalParams& params, int k,
                             std::int64_t max_vertices = kDefaultVertexBudget);

// Induced subgraph on the union of all complete lines in all d directions.
LevelGraph build_complete_lines_subgraph(const FractalParams& params, int k,
                                         std::int64_t max_vertices = kDefaultVertexBudget);

// Number of complete lines in one direction, by enumeration (oracle for the
// N^k closed form).
std::int64_t count_complete_lines_in_direction(const FractalParams& params, int k, int axis,
                                               std::int64_t budget = 100'000'000);

// Induced subgraph of g on the given vertex ids (any order, deduplicated).
// Coordinates keep the ambient level/params.
LevelGraph induced_subgraph(const LevelGraph& g, std::vector<std::int32_t> ids);

// Layered union of the level graphs for k = 0..k_max with cross edges
// between consecutive levels.  A cross edge (v, w), v in level k-1, w in
// level k, exists iff the digits of v and w agree at all positions
// 0 <= i < k-1 in every coordinate; equivalently v = w mod b^{k-1}
// coordinatewise, so every level-k vertex has exactly one parent.
struct ConeGraph {
    FractalParams params;
    int k_max = 0;
    std::vector<LevelGraph> levels;
    // cross[k] holds (id in levels[k-1], id in levels[k]) pairs, k >= 1,
    // sorted by child id.
    std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> cross;
};

ConeGraph build_cone(const FractalParams& params, int k_max,
                     std::int64_t max_vertices = kDefaultVertexBudget);

}  // namespace fractalsep
