#include <algorithm>
#include <stdexcept>

#include "fractalsep/separation.hpp"

namespace fractalsep {

namespace {

// Digit-pattern arithmetic for plane offsets whose j low base-b digits all
// lie in A.  Such offsets repeat with period b^j (|A|^j per window), which is
// what makes a pair of them straddle any median at distance exactly b^j.

std::int64_t repeated_digit_value(int dg, int j, int b) {
    std::int64_t v = 0;
    for (int i = 0; i < j; ++i) v = v * b + dg;
    return v;
}

// Largest j-digit base-b value <= r with every digit in A, or -1.
std::int64_t largest_pattern_leq(std::int64_t r, int j, int b, const std::vector<int>& A) {
    if (j == 0) return 0;
    std::int64_t best = -1, prefix = 0;
    std::int64_t scale = 1;
    for (int i = 0; i < j - 1; ++i) scale *= b;
    bool tight = true;
    for (int pos = j - 1; pos >= 0 && tight; --pos) {
        int rd = static_cast<int>((r / scale) % b);
        auto it = std::lower_bound(A.begin(), A.end(), rd);
        if (it != A.begin())
            best = std::max(best, prefix + *std::prev(it) * scale +
                                      repeated_digit_value(A.back(), pos, b));
        if (it != A.end() && *it == rd)
            prefix += static_cast<std::int64_t>(rd) * scale;
        else
            tight = false;
        scale /= b;
    }
    if (tight) best = std::max(best, prefix);
    return best;
}

// Smallest j-digit base-b value >= r with every digit in A, or -1.
std::int64_t smallest_pattern_geq(std::int64_t r, int j, int b, const std::vector<int>& A) {
    if (j == 0) return 0;
    std::int64_t best = -1, prefix = 0;
    std::int64_t scale = 1;
    for (int i = 0; i < j - 1; ++i) scale *= b;
    bool tight = true;
    for (int pos = j - 1; pos >= 0 && tight; --pos) {
        int rd = static_cast<int>((r / scale) % b);
        auto it = std::upper_bound(A.begin(), A.end(), rd);
        if (it != A.end())
            best = (best < 0) ? prefix + *it * scale +
                                    repeated_digit_value(A.front(), pos, b)
                              : std::min(best, prefix + *it * scale +
                                                   repeated_digit_value(A.front(), pos, b));
        if (it != A.begin() && *std::prev(it) == rd)
            prefix += static_cast<std::int64_t>(rd) * scale;
        else
            tight = false;
        scale /= b;
    }
    if (tight) best = (best < 0) ? prefix : std::min(best, prefix);
    return best;
}

struct PlaneCutter {
    const LevelGraph& g;
    int d, b;
    std::vector<int> A;        // empty means every offset is a candidate
    std::int64_t q;
    std::int64_t bj = 1;       // b^j for the current recursion depth
    int j = 0;
    std::vector<char> removed;
    std::vector<std::int32_t> cutset;

    explicit PlaneCutter(const LevelGraph& graph)
        : g(graph), d(graph.params.d), b(graph.params.b), A(graph.params.A),
          q(max_allowed(graph.n(), 0.5)), removed(graph.n(), 0) {
        if (graph.params.m == 0) A.clear();  // nonempty m=0 graphs are full grids
    }

    // Largest candidate offset in [lo, x], or -1.
    std::int64_t candidate_leq(std::int64_t x, std::int64_t lo) const {
        if (x < lo) return -1;
        if (j == 0 || A.empty()) return x;
        std::int64_t lambda = x / bj, rem = x % bj;
        std::int64_t pat = largest_pattern_leq(rem, j, b, A);
        std::int64_t cand;
        if (pat >= 0)
            cand = lambda * bj + pat;
        else if (lambda > 0)
            cand = (lambda - 1) * bj + repeated_digit_value(A.back(), j, b);
        else
            return -1;
        return cand >= lo ? cand : -1;
    }

    // Smallest candidate offset in [x, hi], or -1.
    std::int64_t candidate_geq(std::int64_t x, std::int64_t hi) const {
        if (x > hi) return -1;
        if (j == 0 || A.empty()) return x;
        std::int64_t lambda = x / bj, rem = x % bj;
        std::int64_t pat = smallest_pattern_geq(rem, j, b, A);
        std::int64_t cand = (pat >= 0) ? lambda * bj + pat
                                       : (lambda + 1) * bj +
                                             repeated_digit_value(A.front(), j, b);
        return cand <= hi ? cand : -1;
    }

    std::int64_t remove_plane(const std::vector<std::int32_t>& ids, int axis,
                              std::int64_t offset) {
        std::int64_t count = 0;
        for (std::int32_t id : ids) {
            if (removed[id] || g.coord(id, axis) != offset) continue;
            removed[id] = 1;
            cutset.push_back(id);
            ++count;
        }
        return count;
    }

    // Pigeonhole phase: around each axis median, scan windows of w offsets on
    // both sides and delete the first plane at or below the average mass.
    // Only the component between the chosen planes can then exceed q, and it
    // spans less than 2w <= b^{k1} offsets per axis.
    std::vector<std::int32_t> pigeonhole_phase(std::int64_t w) {
        std::int64_t n = g.n();
        std::int64_t tau = q / w;
        std::vector<std::int64_t> strip_lo(d), strip_hi(d);
        std::vector<std::int64_t> vals(n);
        std::vector<std::int32_t> all(n);
        for (std::int64_t i = 0; i < n; ++i) all[i] = static_cast<std::int32_t>(i);
        for (int axis = 0; axis < d; ++axis) {
            for (std::int64_t i = 0; i < n; ++i) vals[i] = g.coord(i, axis);
            std::sort(vals.begin(), vals.end());
            std::int64_t median = vals[(n - 1) / 2];
            for (int dir : {+1, -1}) {
                std::int64_t chosen = -1, chosen_size = -1;
                std::int64_t sparsest = -1, sparsest_size = n + 1;
                for (std::int64_t delta = 1; delta <= w; ++delta) {
                    std::int64_t c = median + dir * delta;
                    auto [first, last] = std::equal_range(vals.begin(), vals.end(), c);
                    std::int64_t size = last - first;
                    if (size <= tau) {
                        chosen = c;
                        chosen_size = size;
                        break;
                    }
                    if (size < sparsest_size) {
                        sparsest_size = size;
                        sparsest = c;
                    }
                }
                if (chosen < 0) {
                    chosen = sparsest;
                    chosen_size = sparsest_size;
                }
                if (chosen_size > tau)
                    throw std::logic_error(
                        "pigeonhole phase found no plane at the guaranteed sparsity");
                remove_plane(all, axis, chosen);
                (dir > 0 ? strip_hi[axis] : strip_lo[axis]) = chosen - dir;
            }
        }
        std::vector<std::int32_t> middle;
        for (std::int64_t i = 0; i < n; ++i) {
            if (removed[i]) continue;
            bool inside = true;
            for (int axis = 0; axis < d && inside; ++axis) {
                std::int64_t c = g.coord(i, axis);
                inside = c >= strip_lo[axis] && c <= strip_hi[axis];
            }
            if (inside) middle.push_back(static_cast<std::int32_t>(i));
        }
        return middle;
    }

    // Recursive phase, iteratively: per round, pick per axis the largest
    // candidate plane at or below the median and its partner b^j higher;
    // remove both, keep the open strip between them.  Components outside the
    // strip sit on one side of a median, hence hold at most half the round's
    // vertices; the strip shrinks below b^j per axis, so depth falls each
    // round and the loop ends at j = 0 with an empty strip.
    void recursive_phase(std::vector<std::int32_t> ids) {
        while (static_cast<std::int64_t>(ids.size()) > q) {
            std::vector<std::int64_t> lo(d), hi(d);
            for (int axis = 0; axis < d; ++axis) {
                lo[axis] = hi[axis] = g.coord(ids[0], axis);
                for (std::int32_t id : ids) {
                    lo[axis] = std::min(lo[axis], g.coord(id, axis));
                    hi[axis] = std::max(hi[axis], g.coord(id, axis));
                }
            }
            std::int64_t maxspan = 0;
            for (int axis = 0; axis < d; ++axis) maxspan = std::max(maxspan, hi[axis] - lo[axis]);
            if (maxspan == 0) {
                // Single cell yet oversized: only possible when q = 0.
                for (std::int32_t id : ids) {
                    removed[id] = 1;
                    cutset.push_back(id);
                }
                return;
            }
            j = 0;
            bj = 1;
            while (bj * b - 1 < maxspan) {
                bj *= b;
                ++j;
            }
            BigInt plane_cap = bigint_plane_cap();
            std::vector<std::int64_t> strip_lo(lo), strip_hi(hi);
            for (int axis = 0; axis < d; ++axis) {
                if (hi[axis] - lo[axis] < bj) continue;
                std::int64_t median = lower_median_live(ids, axis);
                std::int64_t p = candidate_leq(median, lo[axis]);
                std::int64_t partner;
                if (p >= 0) {
                    partner = p + bj;
                    if (partner > hi[axis]) partner = -1;
                } else {
                    partner = candidate_geq(lo[axis], hi[axis]);
                    if (partner < 0)
                        throw std::logic_error("no candidate plane in a window of b^j offsets");
                }
                for (std::int64_t c : {p, partner}) {
                    if (c < 0) continue;
                    std::int64_t size = remove_plane(ids, axis, c);
                    if (BigInt(size) > plane_cap)
                        throw std::logic_error("candidate plane exceeds the b^{d-1} N^j bound");
                }
                strip_lo[axis] = (p >= 0) ? p + 1 : lo[axis];
                strip_hi[axis] = (partner >= 0) ? partner - 1 : hi[axis];
            }
            std::vector<std::int32_t> next;
            for (std::int32_t id : ids) {
                if (removed[id]) continue;
                bool inside = true;
                for (int axis = 0; axis < d && inside; ++axis) {
                    std::int64_t c = g.coord(id, axis);
                    inside = c >= strip_lo[axis] && c <= strip_hi[axis];
                }
                if (inside) next.push_back(id);
            }
            ids = std::move(next);
        }
    }

    // Median over the live subset of ids (earlier axes of the same round may
    // already have deleted some of them; the side-mass argument only needs
    // the median of a superset, and live medians keep cuts tighter).
    std::int64_t lower_median_live(const std::vector<std::int32_t>& ids, int axis) const {
        std::vector<std::int64_t> vals;
        vals.reserve(ids.size());
        for (std::int32_t id : ids)
            if (!removed[id]) vals.push_back(g.coord(id, axis));
        if (vals.empty()) return g.coord(ids[0], axis);
        std::size_t idx = (vals.size() - 1) / 2;
        std::nth_element(vals.begin(), vals.begin() + idx, vals.end());
        return vals[idx];
    }

    BigInt bigint_plane_cap() const {
        BigInt cap = 1;
        for (int i = 0; i < d - 1; ++i) cap *= b;
        BigInt n_eff = A.empty() ? bigpow_b(d - 1) : line_column_configs(g.params);
        for (int i = 0; i < j; ++i) cap *= n_eff;
        return cap;
    }

    BigInt bigpow_b(int e) const {
        BigInt v = 1;
        for (int i = 0; i < e; ++i) v *= b;
        return v;
    }
};

}  // namespace

std::vector<std::int64_t> sparse_plane_candidates(const FractalParams& params, int axis, int k) {
    if (axis < 0 || axis >= params.d) throw std::invalid_argument("axis out of range");
    if (k < 0) throw std::invalid_argument("k must be >= 0");
    constexpr std::int64_t kListBudget = 10'000'000;
    if (params.A.empty()) {
        std::int64_t range = ipow64(params.b, k + 1);
        if (range > kListBudget)
            throw budget_error("candidate list would hold " + std::to_string(range) + " offsets",
                               BigInt(range));
        std::vector<std::int64_t> out(range);
        for (std::int64_t i = 0; i < range; ++i) out[i] = i;
        return out;
    }
    BigInt predicted = 1;
    for (int i = 0; i < k; ++i) predicted *= static_cast<int>(params.A.size());
    predicted *= params.b;
    if (predicted > kListBudget)
        throw budget_error("candidate list would hold " + predicted.str() + " offsets",
                           predicted);
    std::int64_t bk = ipow64(params.b, k);
    std::vector<std::int64_t> patterns;
    // Ascending generation: the most significant digit varies slowest over
    // the sorted A.
    auto emit = [&](auto&& self, int pos, std::int64_t value) -> void {
        if (pos == k) {
            patterns.push_back(value);
            return;
        }
        for (int a : params.A) self(self, pos + 1, value * params.b + a);
    };
    emit(emit, 0, 0);
    std::vector<std::int64_t> out;
    out.reserve(patterns.size() * params.b);
    for (std::int64_t lambda = 0; lambda < params.b; ++lambda)
        for (std::int64_t pat : patterns) out.push_back(lambda * bk + pat);
    return out;
}

CutResult constructive_cut(const LevelGraph& g) {
    std::int64_t n = g.n();
    CutResult r;
    r.epsilon = 0.5;
    r.method = "constructive";
    auto finish = [&](std::vector<std::int32_t> ids) {
        std::sort(ids.begin(), ids.end());
        r.cutset_ids = std::move(ids);
        for (std::int32_t id : r.cutset_ids) r.cutset.push_back(g.point(id));
        r.component_sizes = component_census(g, r.cutset_ids);
        std::int64_t q = max_allowed(n, 0.5);
        r.valid = r.component_sizes.empty() || r.component_sizes.front() <= q;
        if (!r.valid)
            throw std::logic_error("constructive cutter left an oversized component");
        return r;
    };
    if (n == 0) return finish({});
    if (n == 1) return finish({0});
    if (n == 2) {
        bool adjacent = !g.neighbors(0).empty();
        return finish(adjacent ? std::vector<std::int32_t>{0} : std::vector<std::int32_t>{});
    }

    PlaneCutter cutter(g);
    BigInt n_eff = cutter.A.empty() ? cutter.bigpow_b(g.params.d - 1)
                                    : line_column_configs(g.params);
    if (n_eff < 1) n_eff = 1;  // empty families never reach here (n >= 3)
    int k1 = 0;
    BigInt block = BigInt(g.params.b) * n_eff;
    BigInt power = block;
    while (power <= n) {
        power *= block;
        ++k1;
    }
    std::vector<std::int32_t> region;
    std::int64_t w = k1 >= 1 ? ipow64(g.params.b, k1) / 2 : 0;
    if (w >= 1) {
        region = cutter.pigeonhole_phase(w);
    } else {
        for (std::int64_t i = 0; i < n; ++i) region.push_back(static_cast<std::int32_t>(i));
    }
    cutter.recursive_phase(std::move(region));
    return finish(std::move(cutter.cutset));
}

}  // namespace fractalsep
