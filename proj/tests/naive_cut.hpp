#pragma once

#include <cstdint>
#include <vector>

#include "fractalsep/separation.hpp"

// Exhaustive minimum balanced-cut oracle for tiny graphs.  Subsets are tried
// in (size, lexicographic) order, so the first valid one is the
// lexicographically smallest minimum cutset.  Uses its own BFS on purpose;
// only max_allowed is shared, since it defines validity.
namespace testutil {

inline std::vector<std::int64_t> census_bfs(const fractalsep::LevelGraph& g,
                                            const std::vector<std::int32_t>& removed) {
    std::int64_t n = g.n();
    std::vector<char> gone(n, 0), seen(n, 0);
    for (std::int32_t v : removed) gone[v] = 1;
    std::vector<std::int64_t> sizes;
    std::vector<std::int32_t> stack;
    for (std::int32_t s = 0; s < n; ++s) {
        if (gone[s] || seen[s]) continue;
        std::int64_t size = 0;
        stack.push_back(s);
        seen[s] = 1;
        while (!stack.empty()) {
            std::int32_t u = stack.back();
            stack.pop_back();
            ++size;
            for (std::int32_t v : g.neighbors(u)) {
                if (gone[v] || seen[v]) continue;
                seen[v] = 1;
                stack.push_back(v);
            }
        }
        sizes.push_back(size);
    }
    return sizes;
}

inline bool subset_valid(const fractalsep::LevelGraph& g,
                         const std::vector<std::int32_t>& removed, std::int64_t q) {
    for (std::int64_t size : census_bfs(g, removed))
        if (size > q) return false;
    return true;
}

inline std::vector<std::int32_t> naive_min_cut(const fractalsep::LevelGraph& g, double eps) {
    std::int64_t n = g.n();
    std::int64_t q = fractalsep::max_allowed(n, eps);
    for (std::int64_t t = 0; t <= n; ++t) {
        std::vector<std::int32_t> comb(t);
        for (std::int64_t i = 0; i < t; ++i) comb[i] = static_cast<std::int32_t>(i);
        while (true) {
            if (subset_valid(g, comb, q)) return comb;
            std::int64_t i = t - 1;
            while (i >= 0 && comb[i] == n - t + i) --i;
            if (i < 0) break;
            ++comb[i];
            for (std::int64_t j = i + 1; j < t; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
    return {};  // unreachable: removing everything is always valid
}

}  // namespace testutil
