#include "fractalsep/graph.hpp"

#include <algorithm>
#include <cstring>
#include <functional>
#include <limits>

namespace fractalsep {

namespace {

bool side_packs_into_64(std::int64_t side, int d) {
    unsigned __int128 prod = 1;
    for (int i = 0; i < d; ++i) {
        prod *= static_cast<unsigned __int128>(side);
        if (prod > std::numeric_limits<std::uint64_t>::max()) return false;
    }
    return true;
}

// All d-tuples of base-b digits with at most cap entries in A, as flat rows.
std::vector<int> admissible_columns(int slots, const FractalParams& p, int cap) {
    std::vector<int> cols;
    std::vector<int> cur(slots);
    std::function<void(int, int)> rec = [&](int slot, int used) {
        if (slot == slots) {
            cols.insert(cols.end(), cur.begin(), cur.end());
            return;
        }
        for (int dg = 0; dg < p.b; ++dg) {
            bool in_a = std::binary_search(p.A.begin(), p.A.end(), dg);
            if (in_a && used == cap) continue;
            cur[slot] = dg;
            rec(slot + 1, used + (in_a ? 1 : 0));
        }
    };
    if (cap >= 0) rec(0, 0);
    return cols;
}

struct RowLess {
    const std::vector<std::int64_t>& rows;
    int d;
    bool operator()(std::int64_t a, std::int64_t b) const {
        return std::lexicographical_compare(rows.begin() + a * d, rows.begin() + (a + 1) * d,
                                            rows.begin() + b * d, rows.begin() + (b + 1) * d);
    }
};

// Sorts rows of width d lexicographically and removes duplicates.
void sort_rows(std::vector<std::int64_t>& rows, int d, std::int64_t side) {
    std::int64_t n = static_cast<std::int64_t>(rows.size()) / d;
    if (n <= 1) return;
    if (side_packs_into_64(side, d)) {
        std::vector<std::uint64_t> keys(n);
        for (std::int64_t i = 0; i < n; ++i) {
            std::uint64_t key = 0;
            for (int c = 0; c < d; ++c) key = key * static_cast<std::uint64_t>(side) +
                                              static_cast<std::uint64_t>(rows[i * d + c]);
            keys[i] = key;
        }
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        n = static_cast<std::int64_t>(keys.size());
        rows.resize(n * d);
        for (std::int64_t i = 0; i < n; ++i) {
            std::uint64_t key = keys[i];
            for (int c = d - 1; c >= 0; --c) {
                rows[i * d + c] = static_cast<std::int64_t>(key % side);
                key /= side;
            }
        }
        return;
    }
    std::vector<std::int64_t> idx(n);
    for (std::int64_t i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), RowLess{rows, d});
    std::vector<std::int64_t> sorted;
    sorted.reserve(rows.size());
    for (std::int64_t i = 0; i < n; ++i) {
        auto begin = rows.begin() + idx[i] * d;
        if (!sorted.empty() &&
            std::equal(begin, begin + d, sorted.end() - d))
            continue;
        sorted.insert(sorted.end(), begin, begin + d);
    }
    rows = std::move(sorted);
}

}  // namespace

LatticePoint LevelGraph::point(std::int64_t id) const {
    return LatticePoint(coords_.begin() + id * params.d, coords_.begin() + (id + 1) * params.d);
}

std::optional<std::int32_t> LevelGraph::find(const LatticePoint& p) const {
    if (static_cast<int>(p.size()) != params.d)
        throw std::invalid_argument("point has wrong number of coordinates");
    for (std::int64_t c : p)
        if (c < 0 || c >= side) return std::nullopt;
    std::int64_t count = n();
    if (packable_) {
        std::uint64_t key = 0;
        for (std::int64_t c : p) key = key * static_cast<std::uint64_t>(side) +
                                       static_cast<std::uint64_t>(c);
        auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
        if (it == keys_.end() || *it != key) return std::nullopt;
        return static_cast<std::int32_t>(it - keys_.begin());
    }
    std::int64_t lo = 0, hi = count;
    while (lo < hi) {
        std::int64_t mid = (lo + hi) / 2;
        if (std::lexicographical_compare(coords_.begin() + mid * params.d,
                                         coords_.begin() + (mid + 1) * params.d, p.begin(),
                                         p.end()))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo == count ||
        !std::equal(p.begin(), p.end(), coords_.begin() + lo * params.d))
        return std::nullopt;
    return static_cast<std::int32_t>(lo);
}

void LevelGraph::build_index() {
    std::int64_t count = static_cast<std::int64_t>(coords_.size()) / params.d;
    packable_ = side_packs_into_64(side, params.d);
    if (packable_) {
        keys_.resize(count);
        for (std::int64_t i = 0; i < count; ++i) {
            std::uint64_t key = 0;
            for (int c = 0; c < params.d; ++c)
                key = key * static_cast<std::uint64_t>(side) +
                      static_cast<std::uint64_t>(coords_[i * params.d + c]);
            keys_[i] = key;
        }
    }
}

LevelGraph LevelGraph::from_sorted_coords(FractalParams params, int k,
                                          std::vector<std::int64_t> coords, std::string kind) {
    LevelGraph g;
    g.params = std::move(params);
    g.k = k;
    g.side = ipow64(g.params.b, k);
    g.kind = std::move(kind);
    g.coords_ = std::move(coords);
    int d = g.params.d;
    std::int64_t n = static_cast<std::int64_t>(g.coords_.size()) / d;
    if (g.coords_.size() != static_cast<std::size_t>(n) * d)
        throw std::invalid_argument("coordinate array not a multiple of d");
    for (std::int64_t i = 0; i + 1 < n; ++i) {
        if (!std::lexicographical_compare(g.coords_.begin() + i * d,
                                          g.coords_.begin() + (i + 1) * d,
                                          g.coords_.begin() + (i + 1) * d,
                                          g.coords_.begin() + (i + 2) * d))
            throw std::invalid_argument("vertex rows not strictly lexicographically sorted");
    }
    g.build_index();

    // L1 adjacency: probing only the +1 neighbor along each axis yields each
    // edge once with the smaller id first, since increasing any coordinate
    // increases the lexicographic rank.
    std::vector<std::pair<std::int32_t, std::int32_t>> edges;
    LatticePoint probe(d);
    for (std::int64_t i = 0; i < n; ++i) {
        for (int c = 0; c < d; ++c) probe[c] = g.coords_[i * d + c];
        for (int axis = 0; axis < d; ++axis) {
            ++probe[axis];
            if (probe[axis] < g.side) {
                if (auto nb = g.find(probe))
                    edges.emplace_back(static_cast<std::int32_t>(i), *nb);
            }
            --probe[axis];
        }
    }
    g.offsets_.assign(n + 1, 0);
    for (auto [u, v] : edges) {
        ++g.offsets_[u + 1];
        ++g.offsets_[v + 1];
    }
    for (std::int64_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.adj_.resize(edges.size() * 2);
    std::vector<std::int64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [u, v] : edges) {
        g.adj_[cursor[u]++] = v;
        g.adj_[cursor[v]++] = u;
    }
    for (std::int64_t i = 0; i < n; ++i)
        std::sort(g.adj_.begin() + g.offsets_[i], g.adj_.begin() + g.offsets_[i + 1]);
    g.max_degree_ = 0;
    for (std::int64_t i = 0; i < n; ++i)
        g.max_degree_ = std::max<std::int64_t>(g.max_degree_, g.degree(i));
    return g;
}

bool is_vertex(const FractalParams& params, int k, const LatticePoint& p) {
    if (static_cast<int>(p.size()) != params.d)
        throw std::invalid_argument("point has wrong number of coordinates");
    std::int64_t side = ipow64(params.b, k);
    for (std::int64_t c : p)
        if (c < 0 || c >= side)
            throw std::invalid_argument("coordinate " + std::to_string(c) +
                                        " outside [0, " + std::to_string(side) + ")");
    std::vector<std::int64_t> rest(p);
    for (int j = 0; j < k; ++j) {
        int hits = 0;
        for (int i = 0; i < params.d; ++i) {
            int dg = static_cast<int>(rest[i] % params.b);
            rest[i] /= params.b;
            if (std::binary_search(params.A.begin(), params.A.end(), dg)) ++hits;
        }
        if (hits > params.m) return false;
    }
    return true;
}

bool is_complete_line(const FractalParams& params, int k, int axis,
                      const std::vector<std::int64_t>& fixed) {
    if (axis < 0 || axis >= params.d) throw std::invalid_argument("axis out of range");
    if (static_cast<int>(fixed.size()) != params.d - 1)
        throw std::invalid_argument("expected d-1 fixed coordinates");
    std::int64_t side = ipow64(params.b, k);
    for (std::int64_t c : fixed)
        if (c < 0 || c >= side)
            throw std::invalid_argument("fixed coordinate outside [0, side)");
    if (params.A.empty()) return true;  // every point is a vertex
    std::vector<std::int64_t> rest(fixed);
    for (int j = 0; j < k; ++j) {
        int hits = 0;
        for (auto& c : rest) {
            int dg = static_cast<int>(c % params.b);
            c /= params.b;
            if (std::binary_search(params.A.begin(), params.A.end(), dg)) ++hits;
        }
        if (hits > params.m - 1) return false;
    }
    return true;
}

LevelGraph build_level_graph(const FractalParams& params, int k, std::int64_t max_vertices) {
    if (k < 0) throw std::invalid_argument("level k must be >= 0");
    BigInt predicted = vertex_count_formula(params, k);
    if (predicted > max_vertices)
        throw budget_error("level graph for " + params.describe() + ", k=" + std::to_string(k) +
                               " would have " + predicted.str() + " vertices (budget " +
                               std::to_string(max_vertices) + ")",
                           predicted);
    int d = params.d;
    std::vector<int> cols = admissible_columns(d, params, params.m);
    std::int64_t ncols = static_cast<std::int64_t>(cols.size()) / d;

    std::vector<std::int64_t> rows;
    rows.reserve(predicted.convert_to<std::int64_t>() * d);
    std::vector<std::int64_t> acc(d, 0);
    std::function<void(int, std::int64_t)> rec = [&](int pos, std::int64_t scale) {
        if (pos == k) {
            rows.insert(rows.end(), acc.begin(), acc.end());
            return;
        }
        for (std::int64_t c = 0; c < ncols; ++c) {
            for (int i = 0; i < d; ++i) acc[i] += scale * cols[c * d + i];
            rec(pos + 1, scale * params.b);
            for (int i = 0; i < d; ++i) acc[i] -= scale * cols[c * d + i];
        }
    };
    rec(0, 1);
    std::int64_t side = ipow64(params.b, k);
    sort_rows(rows, d, side);
    return LevelGraph::from_sorted_coords(params, k, std::move(rows), "level");
}

namespace {

// Enumerates the fixed-coordinate tuples of complete lines: sequences of k
// admissible (d-1)-digit columns with at most m-1 entries in A (at most m
// when A is empty, where every line is complete).  k = 0 always yields the
// single all-zero tuple, matching is_complete_line's vacuous acceptance.
void for_each_complete_line(const FractalParams& params, int k,
                            const std::function<void(const std::vector<std::int64_t>&)>& fn) {
    int slots = params.d - 1;
    int cap = params.m - (params.A.empty() ? 0 : 1);
    std::vector<int> cols = admissible_columns(slots, params, cap);
    std::int64_t ncols = static_cast<std::int64_t>(cols.size()) / slots;
    if (ncols == 0 && k > 0) return;
    std::vector<std::int64_t> fixed(slots, 0);
    std::function<void(int, std::int64_t)> rec = [&](int pos, std::int64_t scale) {
        if (pos == k) {
            fn(fixed);
            return;
        }
        for (std::int64_t c = 0; c < ncols; ++c) {
            for (int i = 0; i < slots; ++i) fixed[i] += scale * cols[c * slots + i];
            rec(pos + 1, scale * params.b);
            for (int i = 0; i < slots; ++i) fixed[i] -= scale * cols[c * slots + i];
        }
    };
    rec(0, 1);
}

}  // namespace

LevelGraph build_complete_lines_subgraph(const FractalParams& params, int k,
                                         std::int64_t max_vertices) {
    if (k < 0) throw std::invalid_argument("level k must be >= 0");
    BigInt estimate = BigInt(params.d) * complete_lines_count(params, k) * ipow64(params.b, k);
    if (estimate > max_vertices)
        throw budget_error("complete-lines subgraph for " + params.describe() +
                               ", k=" + std::to_string(k) + " would have up to " +
                               estimate.str() + " vertices (budget " +
                               std::to_string(max_vertices) + ")",
                           estimate);
    int d = params.d;
    std::int64_t side = ipow64(params.b, k);
    std::vector<std::int64_t> rows;
    std::vector<std::int64_t> point(d);
    for (int axis = 0; axis < d; ++axis) {
        for_each_complete_line(params, k, [&](const std::vector<std::int64_t>& fixed) {
            int fi = 0;
            for (int i = 0; i < d; ++i)
                if (i != axis) point[i] = fixed[fi++];
            for (std::int64_t t = 0; t < side; ++t) {
                point[axis] = t;
                rows.insert(rows.end(), point.begin(), point.end());
            }
        });
    }
    sort_rows(rows, d, side);
    return LevelGraph::from_sorted_coords(params, k, std::move(rows), "complete-lines");
}

std::int64_t count_complete_lines_in_direction(const FractalParams& params, int k, int axis,
                                               std::int64_t budget) {
    if (axis < 0 || axis >= params.d) throw std::invalid_argument("axis out of range");
    BigInt tuples = 1;
    std::int64_t side = ipow64(params.b, k);
    for (int i = 0; i < params.d - 1; ++i) tuples *= side;
    if (tuples > budget)
        throw budget_error("complete-line enumeration would scan " + tuples.str() + " tuples",
                           tuples);
    std::vector<std::int64_t> fixed(params.d - 1, 0);
    std::int64_t count = 0;
    std::function<void(int)> rec = [&](int slot) {
        if (slot == params.d - 1) {
            if (is_complete_line(params, k, axis, fixed)) ++count;
            return;
        }
        for (std::int64_t c = 0; c < side; ++c) {
            fixed[slot] = c;
            rec(slot + 1);
        }
    };
    rec(0);
    return count;
}

LevelGraph induced_subgraph(const LevelGraph& g, std::vector<std::int32_t> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (std::int32_t id : ids)
        if (id < 0 || id >= g.n()) throw std::invalid_argument("vertex id out of range");
    int d = g.params.d;
    std::vector<std::int64_t> rows;
    rows.reserve(ids.size() * d);
    for (std::int32_t id : ids)
        for (int c = 0; c < d; ++c) rows.push_back(g.coord(id, c));
    return LevelGraph::from_sorted_coords(g.params, g.k, std::move(rows), "induced");
}

ConeGraph build_cone(const FractalParams& params, int k_max, std::int64_t max_vertices) {
    if (k_max < 0) throw std::invalid_argument("k_max must be >= 0");
    BigInt total = 0;
    for (int k = 0; k <= k_max; ++k) total += vertex_count_formula(params, k);
    if (total > max_vertices)
        throw budget_error("cone through level " + std::to_string(k_max) + " would have " +
                               total.str() + " vertices (budget " +
                               std::to_string(max_vertices) + ")",
                           total);
    ConeGraph cone;
    cone.params = params;
    cone.k_max = k_max;
    cone.cross.resize(k_max + 1);
    for (int k = 0; k <= k_max; ++k)
        cone.levels.push_back(build_level_graph(params, k, max_vertices));
    for (int k = 1; k <= k_max; ++k) {
        const LevelGraph& child = cone.levels[k];
        const LevelGraph& parent = cone.levels[k - 1];
        std::int64_t mod = ipow64(params.b, k - 1);
        LatticePoint pp(params.d);
        for (std::int64_t w = 0; w < child.n(); ++w) {
            for (int c = 0; c < params.d; ++c) pp[c] = child.coord(w, c) % mod;
            auto pid = parent.find(pp);
            if (!pid)
                throw std::logic_error("cone parent missing: truncating digits left the family");
            cone.cross[k].emplace_back(*pid, static_cast<std::int32_t>(w));
        }
    }
    return cone;
}

}  // namespace fractalsep
