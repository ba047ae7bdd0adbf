#pragma once

#include <cstdint>
#include <vector>

#include "fractalsep/graph.hpp"
#include "fractalsep/separation.hpp"

namespace fractalsep {

// All-pairs canonical path system over a complete-lines subgraph, m = 1 only.
// Paths are never stored; congestion is accumulated by streaming over ordered
// pairs (x == y included, contributing 1 to its endpoint).  A vertex visited
// twice by one walk counts once toward that walk's congestion.
struct PathSystem {
    const LevelGraph* graph = nullptr;
    std::int64_t pair_count = 0;              // n^2 ordered pairs
    std::vector<std::int64_t> congestion;     // indexed by vertex id
    std::int64_t max_congestion = 0;
};

inline constexpr std::int64_t kDefaultPairBudget = 10'000'000;

// Walks one axis at a time: move the A-containing coordinate of x aside,
// copy the free coordinates of y in index order, then land the two special
// coordinates.  Every segment runs along a complete line; a point falling
// outside the graph is a construction bug and throws logic_error.
PathSystem build_canonical_paths(const LevelGraph& c,
                                 std::int64_t max_pairs = kDefaultPairBudget);

// The walk for one ordered pair, materialized with repeats preserved.
std::vector<std::int32_t> canonical_path(const LevelGraph& c, std::int32_t x,
                                         std::int32_t y);

// n^2 / (8 * max_congestion), an unconditional lower bound on cut^{1/2} only
// when some cutset of size <= n/4 exists; callers certify by passing such a
// witness.  Without one the value is still returned, flagged conditional.
struct PathBound {
    double raw = 0.0;          // n^2 / (8 m), unrounded
    BigInt value = 0;          // ceil of raw, exact arithmetic
    bool conditional = true;
    std::int64_t witness_size = -1;
};

PathBound path_lower_bound(const PathSystem& ps);
PathBound path_lower_bound(const PathSystem& ps, const CutResult& witness);

}  // namespace fractalsep
