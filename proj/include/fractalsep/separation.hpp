#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fractalsep/graph.hpp"

namespace fractalsep {

// Largest residual component size permitted by cut^eps on n vertices:
// floor(eps * n).
std::int64_t max_allowed(std::int64_t n, double eps);

// Connected component sizes of g with the given vertices deleted, sorted
// descending.  Duplicate ids are tolerated.
std::vector<std::int64_t> component_census(const LevelGraph& g,
                                           const std::vector<std::int32_t>& removed);

struct CutResult {
    double epsilon = 0.5;
    std::vector<std::int32_t> cutset_ids;       // ascending, hence coordinate-lex order
    std::vector<LatticePoint> cutset;           // the same vertices as coordinate tuples
    std::vector<std::int64_t> component_sizes;  // descending
    bool valid = false;           // largest residual component <= floor(eps * n)
    bool proved_optimal = false;  // no smaller valid cutset exists
    bool lex_minimal = false;     // proven lexicographically smallest optimum
    std::int64_t proven_lower_bound = 0;  // every valid cutset has at least this many vertices
    std::int64_t nodes_explored = 0;
    std::string method;

    std::int64_t cut_size() const { return static_cast<std::int64_t>(cutset_ids.size()); }
    std::int64_t largest_component() const {
        return component_sizes.empty() ? 0 : component_sizes.front();
    }
};

struct BnbOptions {
    std::int64_t node_limit = 5'000'000;
    double time_limit_sec = 0.0;  // 0 disables the wall clock; keeps runs reproducible
    bool lex_minimize = true;
    std::vector<std::int32_t> incumbent;  // optional valid cutset seeding the search
};

// Minimum balanced separator by iterative deepening over the cutset size.
// Deterministic given the canonical vertex order.  Within budget the result
// is proved optimal (and lexicographically minimal when requested); on
// budget exhaustion the best incumbent is returned with proved_optimal
// false and proven_lower_bound holding the exhausted floor.
CutResult cut_epsilon_exact(const LevelGraph& g, double eps, const BnbOptions& opt = {});

// Two-phase plane cutter for eps = 1/2: median-window pigeonhole planes
// confine the only possibly-oversized component to a box of side b^{k1},
// then recursive sparse planes (low digits in A) shrink that box by a factor
// b per round.  Valid on every induced subgraph of a level graph; the size
// is bounded by constructive_bound(params, k1) with k1 = floor(log_{bN} n).
CutResult constructive_cut(const LevelGraph& g);

// Offsets in [0, b^{k+1}) whose k low base-b digits all lie in A, ascending.
// Every window of b^k consecutive integers contains |A|^k of them, and such
// a plane meets at most plane_column_configs * N^k vertices of the level-
// (k+1) graph.  When A is empty every offset qualifies (all planes of the
// full grid are equally sparse).
std::vector<std::int64_t> sparse_plane_candidates(const FractalParams& params, int axis, int k);

// Sparsest whole hyperplane {x_axis = c} leaving at most floor(n/2) vertices
// strictly on each side; nullopt when no offset achieves that.  Serves as a
// cheap balanced-cut witness.
std::optional<CutResult> single_plane_cut(const LevelGraph& g);

// Proven floor 2^{k-1} (1 at k = 0) for balanced cuts of the carpet
// complete-lines subgraph.  Rejects non-carpet parameters.
BigInt direct_line_lower_bound(const FractalParams& params, int k);

// Deterministic greedy valid cutset: repeatedly delete the highest-degree
// vertex of the largest component.  Used to seed the exact search.
std::vector<std::int32_t> greedy_cut(const LevelGraph& g, double eps);

}  // namespace fractalsep
