#include "fractalsep/separation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace fractalsep {

std::int64_t max_allowed(std::int64_t n, double eps) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    long double cap = static_cast<long double>(eps) * static_cast<long double>(n);
    auto q = static_cast<std::int64_t>(std::floor(cap));
    return q < 0 ? 0 : q;
}

namespace {

struct Census {
    std::vector<std::int64_t> sizes;       // by component index, discovery order
    std::vector<std::int32_t> comp_of;     // per vertex, -1 = removed
    int target = -1;                       // oversized component chosen for branching
    std::int64_t oversized_lb = 0;         // summed removal lower bound
    bool any_oversized_unreachable = false;  // an oversized component with all vertices banned
};

// BFS census over the live vertices.  For each oversized component adds the
// degree-based removal lower bound ceil((size - q) / (1 + q*(maxdeg - 1)))
// and picks the largest one (ties: first discovered, i.e. smallest seed id)
// as the branching target.
Census census(const LevelGraph& g, const std::vector<char>& removed, std::int64_t q,
              const std::vector<char>* banned) {
    std::int64_t n = g.n();
    Census c;
    c.comp_of.assign(n, -1);
    std::vector<std::int32_t> queue;
    std::int64_t denom = 1 + q * std::max(0, g.max_degree() - 1);
    if (denom < 1) denom = 1;
    std::int64_t best_size = -1;
    for (std::int64_t seed = 0; seed < n; ++seed) {
        if (removed[seed] || c.comp_of[seed] >= 0) continue;
        int idx = static_cast<int>(c.sizes.size());
        queue.clear();
        queue.push_back(static_cast<std::int32_t>(seed));
        c.comp_of[seed] = idx;
        std::int64_t size = 0;
        bool has_unbanned = false;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            std::int32_t v = queue[head];
            ++size;
            if (banned && !(*banned)[v]) has_unbanned = true;
            for (std::int32_t w : g.neighbors(v)) {
                if (removed[w] || c.comp_of[w] >= 0) continue;
                c.comp_of[w] = idx;
                queue.push_back(w);
            }
        }
        c.sizes.push_back(size);
        if (size > q) {
            c.oversized_lb += (size - q + denom - 1) / denom;
            if (banned && !has_unbanned) c.any_oversized_unreachable = true;
            if (size > best_size) {
                best_size = size;
                c.target = idx;
            }
        }
    }
    return c;
}

struct BnbState {
    const LevelGraph& g;
    std::int64_t q;
    std::int64_t node_limit;
    std::chrono::steady_clock::time_point deadline;
    bool use_deadline = false;
    std::int64_t nodes = 0;
    bool aborted = false;
    std::vector<std::int32_t> by_degree;  // ids ordered by (degree desc, id asc)
    std::vector<char> removed;
    std::vector<char> banned;
    std::vector<std::int32_t> chosen;
    std::vector<std::int32_t> solution;

    bool tick() {
        if (aborted) return false;
        if (++nodes > node_limit) {
            aborted = true;
            return false;
        }
        if (use_deadline && (nodes & 1023) == 0 &&
            std::chrono::steady_clock::now() > deadline) {
            aborted = true;
            return false;
        }
        return true;
    }
};

// Depth-first search for a valid cutset extending `chosen` with at most
// `budget` further deletions.  Branches over the vertices of one oversized
// component; vertices tried earlier are banned in later branches so no
// candidate set is explored twice.
bool bnb_find(BnbState& s, std::int64_t budget) {
    if (!s.tick()) return false;
    Census c = census(s.g, s.removed, s.q, &s.banned);
    if (c.target < 0) {
        s.solution = s.chosen;
        return true;
    }
    if (c.oversized_lb > budget || c.any_oversized_unreachable) return false;
    std::vector<std::int32_t> branch;
    for (std::int32_t v : s.by_degree)
        if (!s.removed[v] && !s.banned[v] && c.comp_of[v] == c.target) branch.push_back(v);
    std::size_t banned_here = 0;
    bool ok = false;
    for (std::int32_t v : branch) {
        s.removed[v] = 1;
        s.chosen.push_back(v);
        ok = bnb_find(s, budget - 1);
        s.chosen.pop_back();
        s.removed[v] = 0;
        if (ok || s.aborted) break;
        s.banned[v] = 1;
        ++banned_here;
    }
    for (std::size_t i = 0; i < banned_here; ++i) s.banned[branch[i]] = 0;
    return ok;
}

// Enumerates cutsets of size exactly `target` in lexicographic order of the
// sorted id tuple and returns the first valid one.  Candidates are confined
// to currently oversized components: in a minimum cutset every element lies
// in an oversized component of the graph minus the other elements, so the
// restriction never skips an optimal set.
bool lex_min_search(BnbState& s, std::int64_t target, std::int32_t from) {
    if (!s.tick()) return false;
    Census c = census(s.g, s.removed, s.q, nullptr);
    if (c.target < 0) {
        s.solution = s.chosen;
        return true;
    }
    std::int64_t budget = target - static_cast<std::int64_t>(s.chosen.size());
    if (budget <= 0 || c.oversized_lb > budget) return false;
    std::int64_t n = s.g.n();
    for (std::int32_t v = from; v < n; ++v) {
        if (s.removed[v] || c.comp_of[v] < 0) continue;
        if (c.sizes[c.comp_of[v]] <= s.q) continue;
        s.removed[v] = 1;
        s.chosen.push_back(v);
        bool ok = lex_min_search(s, target, v + 1);
        s.chosen.pop_back();
        s.removed[v] = 0;
        if (ok || s.aborted) return ok;
    }
    return false;
}

void fill_result(CutResult& r, const LevelGraph& g, std::vector<std::int32_t> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    r.cutset_ids = std::move(ids);
    r.cutset.clear();
    for (std::int32_t id : r.cutset_ids) r.cutset.push_back(g.point(id));
    r.component_sizes = component_census(g, r.cutset_ids);
    std::int64_t q = max_allowed(g.n(), r.epsilon);
    r.valid = r.component_sizes.empty() || r.component_sizes.front() <= q;
}

}  // namespace

std::vector<std::int64_t> component_census(const LevelGraph& g,
                                           const std::vector<std::int32_t>& removed) {
    std::vector<char> gone(g.n(), 0);
    for (std::int32_t id : removed) {
        if (id < 0 || id >= g.n()) throw std::invalid_argument("removed id out of range");
        gone[id] = 1;
    }
    Census c = census(g, gone, g.n() + 1, nullptr);
    std::sort(c.sizes.begin(), c.sizes.end(), std::greater<>());
    return c.sizes;
}

std::vector<std::int32_t> greedy_cut(const LevelGraph& g, double eps) {
    std::int64_t q = max_allowed(g.n(), eps);
    std::vector<char> removed(g.n(), 0);
    std::vector<std::int32_t> out;
    while (true) {
        Census c = census(g, removed, q, nullptr);
        if (c.target < 0) break;
        std::int32_t pick = -1;
        std::int64_t best_deg = -1;
        for (std::int64_t v = 0; v < g.n(); ++v) {
            if (removed[v] || c.comp_of[v] != c.target) continue;
            if (g.degree(v) > best_deg) {
                best_deg = g.degree(v);
                pick = static_cast<std::int32_t>(v);
            }
        }
        removed[pick] = 1;
        out.push_back(pick);
    }
    std::sort(out.begin(), out.end());
    return out;
}

CutResult cut_epsilon_exact(const LevelGraph& g, double eps, const BnbOptions& opt) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("epsilon must be in (0, 1)");
    std::int64_t n = g.n();
    std::int64_t q = max_allowed(n, eps);
    CutResult r;
    r.epsilon = eps;
    r.method = "branch-and-bound";
    if (n == 0) {
        r.valid = r.proved_optimal = r.lex_minimal = true;
        return r;
    }
    if (q == 0) {
        // Any surviving vertex is an oversized component, so everything goes.
        std::vector<std::int32_t> all(n);
        for (std::int64_t i = 0; i < n; ++i) all[i] = static_cast<std::int32_t>(i);
        fill_result(r, g, std::move(all));
        r.proved_optimal = r.lex_minimal = true;
        r.proven_lower_bound = n;
        return r;
    }

    std::vector<std::int32_t> best;
    if (!opt.incumbent.empty()) {
        std::vector<std::int64_t> sizes = component_census(g, opt.incumbent);
        if (!sizes.empty() && sizes.front() > q)
            throw std::invalid_argument("incumbent seed is not a valid cutset");
        best = opt.incumbent;
        std::sort(best.begin(), best.end());
        best.erase(std::unique(best.begin(), best.end()), best.end());
    } else {
        best = greedy_cut(g, eps);
    }

    BnbState s{g, q, opt.node_limit, {}, false, 0, false, {}, {}, {}, {}, {}};
    if (opt.time_limit_sec > 0) {
        s.use_deadline = true;
        s.deadline = std::chrono::steady_clock::now() +
                     std::chrono::microseconds(
                         static_cast<std::int64_t>(opt.time_limit_sec * 1e6));
    }
    s.by_degree.resize(n);
    for (std::int64_t i = 0; i < n; ++i) s.by_degree[i] = static_cast<std::int32_t>(i);
    std::stable_sort(s.by_degree.begin(), s.by_degree.end(),
                     [&](std::int32_t a, std::int32_t b) { return g.degree(a) > g.degree(b); });
    s.removed.assign(n, 0);
    s.banned.assign(n, 0);

    Census root = census(g, s.removed, q, nullptr);
    bool proved = false;
    std::int64_t floor_proved = 0;
    if (root.target < 0) {
        best.clear();
        proved = true;
    } else {
        floor_proved = root.oversized_lb;
        for (std::int64_t t = root.oversized_lb;
             t < static_cast<std::int64_t>(best.size()); ++t) {
            if (bnb_find(s, t)) {
                best = s.solution;
                proved = true;
                break;
            }
            if (s.aborted) break;
            floor_proved = t + 1;
        }
        if (!s.aborted && !proved) proved = true;  // deepening reached |best|
    }

    bool lex = proved && best.empty();
    if (proved && opt.lex_minimize && !best.empty()) {
        s.chosen.clear();
        std::fill(s.removed.begin(), s.removed.end(), 0);
        if (lex_min_search(s, static_cast<std::int64_t>(best.size()), 0)) {
            best = s.solution;
            lex = true;
        }
        // On abort the size-optimal set stands but minimality of the tuple
        // is no longer certified.
    }

    fill_result(r, g, std::move(best));
    r.proved_optimal = proved;
    r.lex_minimal = lex;
    r.proven_lower_bound = proved ? r.cut_size() : floor_proved;
    r.nodes_explored = s.nodes;
    if (!r.valid) throw std::logic_error("exact search produced an invalid cutset");
    return r;
}

std::optional<CutResult> single_plane_cut(const LevelGraph& g) {
    std::int64_t n = g.n();
    if (n == 0) return std::nullopt;
    std::int64_t q = max_allowed(n, 0.5);
    int best_axis = -1;
    std::int64_t best_offset = 0, best_size = n + 1;
    std::vector<std::int64_t> vals(n);
    for (int axis = 0; axis < g.params.d; ++axis) {
        for (std::int64_t i = 0; i < n; ++i) vals[i] = g.coord(i, axis);
        std::sort(vals.begin(), vals.end());
        std::int64_t i = 0;
        while (i < n) {
            std::int64_t j = i;
            while (j < n && vals[j] == vals[i]) ++j;
            std::int64_t left = i, size = j - i, right = n - j;
            if (left <= q && right <= q && size < best_size) {
                best_size = size;
                best_axis = axis;
                best_offset = vals[i];
            }
            i = j;
        }
    }
    if (best_axis < 0) return std::nullopt;
    CutResult r;
    r.epsilon = 0.5;
    r.method = "single-plane";
    std::vector<std::int32_t> ids;
    for (std::int64_t i = 0; i < n; ++i)
        if (g.coord(i, best_axis) == best_offset) ids.push_back(static_cast<std::int32_t>(i));
    fill_result(r, g, std::move(ids));
    if (!r.valid) throw std::logic_error("plane witness failed the balance check");
    return r;
}

BigInt direct_line_lower_bound(const FractalParams& params, int k) {
    if (!(params == FractalParams::carpet()))
        throw std::invalid_argument("direct line bound is specific to d=2, b=3, A={1}, m=1");
    if (k < 0) throw std::invalid_argument("level k must be >= 0");
    if (k == 0) return 1;
    BigInt v = 1;
    return v << (k - 1);
}

}  // namespace fractalsep
