#include <algorithm>
#include <stdexcept>
#include <string>

#include "fractalsep/counting.hpp"
#include "fractalsep/paths.hpp"

namespace fractalsep {

namespace {

// Index of the unique coordinate of v containing an A-digit, or 0 if all are
// A-free.  Two such coordinates mean v lies on no complete line, so the input
// is not a complete-lines subgraph.
int special_axis(const LevelGraph& g, std::int32_t v) {
    int found = -1;
    for (int t = 0; t < g.params.d; ++t) {
        if (count_a_digits(g.coord(v, t), g.k, g.params.b, g.params.A) == 0) continue;
        if (found >= 0)
            throw std::invalid_argument(
                "vertex " + std::to_string(v) + " lies on no complete line");
        found = t;
    }
    return found >= 0 ? found : 0;
}

template <typename Visit>
void walk_pair(const LevelGraph& g, std::int32_t xid, std::int32_t yid, Visit&& visit) {
    const int d = g.params.d;
    std::vector<std::int64_t> cur(d), dst(d), fixed(d - 1);
    for (int t = 0; t < d; ++t) cur[t] = g.coord(xid, t);
    for (int t = 0; t < d; ++t) dst[t] = g.coord(yid, t);
    std::int32_t cur_id = xid;
    visit(xid);
    if (xid == yid) return;

    auto move_axis = [&](int axis, std::int64_t target) {
        if (cur[axis] == target) return;
        for (int t = 0, w = 0; t < d; ++t)
            if (t != axis) fixed[w++] = cur[t];
        if (!is_complete_line(g.params, g.k, axis, fixed))
            throw std::logic_error("canonical path segment is not a complete line");
        std::int64_t step = target > cur[axis] ? 1 : -1;
        while (cur[axis] != target) {
            cur[axis] += step;
            // Neighbors differ in exactly one coordinate by 1, so matching
            // the moving coordinate pins the successor uniquely.
            std::int32_t next = -1;
            for (std::int32_t v : g.neighbors(cur_id)) {
                if (g.coord(v, axis) == cur[axis]) {
                    next = v;
                    break;
                }
            }
            if (next < 0) throw std::logic_error("canonical path left the graph");
            cur_id = next;
            visit(next);
        }
    };

    int i1 = special_axis(g, xid);
    int j1 = special_axis(g, yid);
    int i2 = i1 == 0 ? 1 : 0;
    move_axis(i1, cur[i2]);
    for (int t = 0; t < d; ++t)
        if (t != i1 && t != j1) move_axis(t, dst[t]);
    move_axis(i1, dst[i1]);
    if (i1 != j1) move_axis(j1, dst[j1]);
}

}  // namespace

PathSystem build_canonical_paths(const LevelGraph& c, std::int64_t max_pairs) {
    if (c.params.m != 1)
        throw std::invalid_argument("canonical paths are defined for m = 1 families");
    std::int64_t n = c.n();
    if (BigInt(n) * n > max_pairs)
        throw budget_error("path system over " + std::to_string(n) +
                               " vertices exceeds the pair budget",
                           BigInt(n) * n);
    for (std::int32_t v = 0; v < n; ++v) special_axis(c, v);

    PathSystem ps;
    ps.graph = &c;
    ps.pair_count = n * n;
    ps.congestion.assign(n, 0);
    // A walk may revisit a vertex (step 1 can retrace step 3's line); stamps
    // make each walk count a vertex once without sorting.
    std::vector<std::int64_t> stamp(n, -1);
    std::int64_t pair_index = 0;
    for (std::int32_t x = 0; x < n; ++x) {
        for (std::int32_t y = 0; y < n; ++y, ++pair_index) {
            walk_pair(c, x, y, [&](std::int32_t id) {
                if (stamp[id] != pair_index) {
                    stamp[id] = pair_index;
                    ++ps.congestion[id];
                }
            });
        }
    }
    for (std::int64_t count : ps.congestion)
        ps.max_congestion = std::max(ps.max_congestion, count);
    return ps;
}

std::vector<std::int32_t> canonical_path(const LevelGraph& c, std::int32_t x,
                                         std::int32_t y) {
    if (c.params.m != 1)
        throw std::invalid_argument("canonical paths are defined for m = 1 families");
    if (x < 0 || x >= c.n() || y < 0 || y >= c.n())
        throw std::invalid_argument("vertex id out of range");
    std::vector<std::int32_t> out;
    walk_pair(c, x, y, [&](std::int32_t id) { out.push_back(id); });
    return out;
}

PathBound path_lower_bound(const PathSystem& ps) {
    if (!ps.graph || ps.graph->n() == 0 || ps.max_congestion == 0)
        throw std::invalid_argument("path bound needs a nonempty path system");
    std::int64_t n = ps.graph->n();
    PathBound b;
    BigInt denom = BigInt(8) * ps.max_congestion;
    BigInt num = BigInt(n) * n;
    b.raw = static_cast<double>(n) * static_cast<double>(n) /
            (8.0 * static_cast<double>(ps.max_congestion));
    b.value = (num + denom - 1) / denom;
    b.conditional = true;
    return b;
}

PathBound path_lower_bound(const PathSystem& ps, const CutResult& witness) {
    PathBound b = path_lower_bound(ps);
    std::int64_t n = ps.graph->n();
    if (witness.valid && 4 * witness.cut_size() <= n) {
        b.conditional = false;
        b.witness_size = witness.cut_size();
    }
    return b;
}

}  // namespace fractalsep
