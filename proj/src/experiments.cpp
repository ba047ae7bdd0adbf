#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fractalsep/counting.hpp"
#include "fractalsep/experiments.hpp"
#include "fractalsep/paths.hpp"

namespace fractalsep {

namespace {

BigInt big_pow(BigInt base, int e) {
    BigInt v = 1;
    for (int i = 0; i < e; ++i) v *= base;
    return v;
}

std::string cache_stem(const std::string& dir, const FractalParams& params, int k,
                       const std::string& kind) {
    std::string key = params.describe() + "|k=" + std::to_string(k) + "|" + kind;
    std::ostringstream name;
    name << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(key);
    return dir + "/" + name.str();
}

template <typename Build>
LevelGraph cached_graph(const std::string& dir, const FractalParams& params, int k,
                        const std::string& kind, Build&& build) {
    if (dir.empty()) return build();
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::string stem = cache_stem(dir, params, k, kind);
    if (std::filesystem::exists(stem + ".json")) {
        try {
            LevelGraph g = load_graph(stem);
            if (g.params == params && g.k == k && g.kind == kind) return g;
        } catch (const std::exception&) {
            // Fall through and rebuild over the corrupt entry.
        }
    }
    LevelGraph g = build();
    try {
        save_graph(g, stem);
    } catch (const std::exception&) {
        // The cache is best-effort; the built graph is still good.
    }
    return g;
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json finite_or_null(double v) {
    return std::isfinite(v) ? json(v) : json(nullptr);
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

LevelGraph GraphCache::level(const FractalParams& params, int k,
                             std::int64_t max_vertices) const {
    return cached_graph(dir, params, k, "level",
                        [&] { return build_level_graph(params, k, max_vertices); });
}

LevelGraph GraphCache::complete_lines(const FractalParams& params, int k,
                                      std::int64_t max_vertices) const {
    return cached_graph(dir, params, k, "complete-lines",
                        [&] { return build_complete_lines_subgraph(params, k, max_vertices); });
}

FitResult fit_exponent(const std::vector<std::pair<double, double>>& rows) {
    if (rows.size() < 3) throw std::invalid_argument("exponent fit needs at least 3 rows");
    std::vector<double> xs, ys;
    for (auto [n, v] : rows) {
        if (!(n > 0.0) || !(v > 0.0))
            throw std::invalid_argument("exponent fit needs positive sizes and values");
        xs.push_back(std::log(n));
        ys.push_back(std::log(v));
    }
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    double mx = sx / xs.size(), my = sy / ys.size();
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx <= 0.0) throw std::invalid_argument("exponent fit is degenerate: all n equal");
    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < xs.size(); ++i)
        fit.max_residual =
            std::max(fit.max_residual, std::abs(ys[i] - fit.intercept - fit.slope * xs[i]));
    return fit;
}

std::vector<CountCheckRow> run_count_checks(const FractalParams& params, int k_max,
                                            std::int64_t max_vertices,
                                            const GraphCache& cache) {
    std::vector<CountCheckRow> out;
    bool carpet = params == FractalParams::carpet();
    for (int k = 0; k <= k_max; ++k) {
        CountCheckRow row;
        row.k = k;
        LevelGraph g = cache.level(params, k, max_vertices);
        row.enumerated_vertices = g.n();
        row.formula_vertices = vertex_count_formula(params, k);
        row.formula_lines = complete_lines_count(params, k);
        for (int axis = 0; axis < params.d; ++axis)
            row.lines_per_direction.push_back(count_complete_lines_in_direction(params, k, axis));
        LevelGraph c = cache.complete_lines(params, k, max_vertices);
        row.complete_vertices = c.n();

        row.ok = true;
        auto fail = [&](const std::string& what) {
            row.ok = false;
            if (!row.note.empty()) row.note += "; ";
            row.note += what;
        };
        if (BigInt(row.enumerated_vertices) != row.formula_vertices)
            fail("vertex count disagrees with the product formula");
        for (std::int64_t lines : row.lines_per_direction)
            if (BigInt(lines) != row.formula_lines)
                fail("per-direction line count disagrees with N^k");
        if (carpet) {
            row.has_closed_form = true;
            row.closed_form = 2 * big_pow(6, k) - big_pow(4, k);
            if (BigInt(row.complete_vertices) != row.closed_form)
                fail("complete-lines size disagrees with 2*6^k - 4^k");
        }
        BigInt envelope = row.formula_lines * big_pow(params.b, k);
        if (BigInt(row.complete_vertices) < envelope ||
            BigInt(row.complete_vertices) > params.d * envelope)
            fail("complete-lines size outside the [1,d]*(Nb)^k envelope");
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<SandwichRow> run_bound_sandwich(const FractalParams& params, int k_min, int k_max,
                                            const SandwichOptions& opt) {
    if (k_min < 0) throw std::invalid_argument("k_min must be >= 0");
    if (!(opt.epsilon > 0.0 && opt.epsilon < 1.0))
        throw std::invalid_argument("epsilon must lie in (0, 1)");
    std::vector<SandwichRow> out;
    bool carpet = params == FractalParams::carpet();
    bool half = opt.epsilon == 0.5;
    for (int k = k_min; k <= k_max; ++k) {
        auto t0 = std::chrono::steady_clock::now();
        SandwichRow row;
        row.k = k;
        LevelGraph c = opt.cache.complete_lines(params, k, opt.max_vertices);
        row.n = c.n();

        CutResult cons;
        bool has_cons = false;
        if (half) {
            cons = constructive_cut(c);
            has_cons = true;
            row.constructive_size = cons.cut_size();
            row.constructive_budget = constructive_bound(params, k);
        }
        std::optional<CutResult> plane = single_plane_cut(c);
        bool plane_fits_eps =
            plane && plane->largest_component() <= max_allowed(row.n, opt.epsilon);

        std::int64_t best_upper = std::numeric_limits<std::int64_t>::max();
        if (has_cons) best_upper = cons.cut_size();
        if (plane_fits_eps) best_upper = std::min(best_upper, plane->cut_size());
        if (row.n <= opt.exact_cap) {
            BnbOptions bo;
            bo.node_limit = opt.node_limit;
            if (has_cons && opt.epsilon >= 0.5) bo.incumbent = cons.cutset_ids;
            CutResult exact = cut_epsilon_exact(c, opt.epsilon, bo);
            best_upper = std::min(best_upper, exact.cut_size());
            row.exact = exact.proved_optimal;
        }
        if (best_upper == std::numeric_limits<std::int64_t>::max()) {
            std::vector<std::int32_t> fallback = greedy_cut(c, opt.epsilon);
            best_upper = static_cast<std::int64_t>(fallback.size());
        }
        row.exact_or_incumbent = best_upper;

        if (half && row.n > 0) {
            if (carpet) {
                row.has_lower = true;
                row.lower_bound = direct_line_lower_bound(params, k);
                row.lower_method = "direct-line";
            }
            if (params.m == 1 && BigInt(row.n) * row.n <= opt.pair_budget) {
                PathSystem ps = build_canonical_paths(c, opt.pair_budget);
                const CutResult* witness = nullptr;
                if (plane && plane->valid && 4 * plane->cut_size() <= row.n)
                    witness = &*plane;
                else if (has_cons && 4 * cons.cut_size() <= row.n)
                    witness = &cons;
                PathBound pb =
                    witness ? path_lower_bound(ps, *witness) : path_lower_bound(ps);
                if (!pb.conditional) {
                    if (!row.has_lower || pb.value > row.lower_bound)
                        row.lower_bound = pb.value;
                    row.has_lower = true;
                    row.lower_method += row.lower_method.empty() ? "path-congestion"
                                                                 : ",path-congestion";
                }
            }
            if (params.m > 1) {
                row.has_conjectural = true;
                row.conjectural_lower = complete_lines_count(params, k);
            }
        }

        if (row.has_lower && row.lower_bound > row.exact_or_incumbent)
            throw std::logic_error("lower bound exceeds the best known cut at k=" +
                                   std::to_string(k));
        if (has_cons && row.exact_or_incumbent > row.constructive_size)
            throw std::logic_error("best known cut exceeds the constructive cut at k=" +
                                   std::to_string(k));
        row.seconds = elapsed_since(t0);
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<std::pair<double, double>> select_column(const std::vector<SandwichRow>& rows,
                                                     Column column) {
    std::vector<std::pair<double, double>> out;
    for (const SandwichRow& row : rows) {
        double value = 0.0;
        switch (column) {
            case Column::kLower:
                if (!row.has_lower) continue;
                value = row.lower_bound.convert_to<double>();
                break;
            case Column::kExactOrIncumbent:
                value = static_cast<double>(row.exact_or_incumbent);
                break;
            case Column::kConstructive:
                value = static_cast<double>(row.constructive_size);
                break;
        }
        if (row.n > 0 && value > 0.0)
            out.emplace_back(static_cast<double>(row.n), value);
    }
    return out;
}

ExperimentReport run_experiment(const FractalParams& params, int k_counts, int k_min,
                                int k_max, const SandwichOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    ExperimentReport report;
    report.params = params;
    try {
        report.target_exponent = separation_exponent(params);
    } catch (const std::domain_error&) {
        report.target_exponent = std::numeric_limits<double>::quiet_NaN();
    }
    if (k_counts >= 0)
        report.count_checks = run_count_checks(params, k_counts, opt.max_vertices, opt.cache);
    if (k_min <= k_max) report.sandwich = run_bound_sandwich(params, k_min, k_max, opt);
    try {
        report.constructive_fit = fit_exponent(select_column(report.sandwich, Column::kConstructive));
        report.has_constructive_fit = true;
    } catch (const std::invalid_argument&) {
    }
    try {
        report.lower_fit = fit_exponent(select_column(report.sandwich, Column::kLower));
        report.has_lower_fit = true;
    } catch (const std::invalid_argument&) {
    }
    report.total_seconds = elapsed_since(t0);
    return report;
}

json report_to_json(const ExperimentReport& report, bool include_timings) {
    json counts = json::array();
    for (const CountCheckRow& row : report.count_checks) {
        json r{{"k", row.k},
               {"vertices",
                {{"enumerated", row.enumerated_vertices},
                 {"formula", bigint_to_json(row.formula_vertices)}}},
               {"lines",
                {{"enumerated", row.lines_per_direction},
                 {"formula", bigint_to_json(row.formula_lines)}}},
               {"complete_lines_subgraph", {{"enumerated", row.complete_vertices}}},
               {"ok", row.ok}};
        if (row.has_closed_form)
            r["complete_lines_subgraph"]["closed_form"] = bigint_to_json(row.closed_form);
        if (!row.note.empty()) r["note"] = row.note;
        counts.push_back(std::move(r));
    }
    json sandwich = json::array();
    for (const SandwichRow& row : report.sandwich) {
        json r{{"k", row.k}, {"n", row.n}};
        r["lower_bound"] = row.has_lower ? bigint_to_json(row.lower_bound) : json(nullptr);
        if (!row.lower_method.empty()) r["lower_method"] = row.lower_method;
        if (row.has_conjectural)
            r["conjectural_lower"] = bigint_to_json(row.conjectural_lower);
        r["exact_or_incumbent"] = row.exact_or_incumbent;
        r["exact"] = row.exact;
        r["constructive_size"] = row.constructive_size;
        r["constructive_budget"] = bigint_to_json(row.constructive_budget);
        if (include_timings) r["seconds"] = row.seconds;
        sandwich.push_back(std::move(r));
    }
    json fits;
    auto fit_json = [](const FitResult& fit) {
        return json{{"slope", fit.slope},
                    {"intercept", fit.intercept},
                    {"max_residual", fit.max_residual}};
    };
    fits["constructive"] =
        report.has_constructive_fit ? fit_json(report.constructive_fit) : json(nullptr);
    fits["lower"] = report.has_lower_fit ? fit_json(report.lower_fit) : json(nullptr);

    json out{{"format", "fractalsep-report"},
             {"version", 1},
             {"params", params_to_json(report.params)},
             {"target_exponent", finite_or_null(report.target_exponent)},
             {"count_checks", std::move(counts)},
             {"sandwich", std::move(sandwich)},
             {"fits", std::move(fits)}};
    if (include_timings) out["total_seconds"] = report.total_seconds;
    return out;
}

std::string report_to_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "k,n,lower_bound,conjectural_lower,exact_or_incumbent,exact,constructive_size,seconds\n";
    for (const SandwichRow& row : report.sandwich) {
        out << row.k << ',' << row.n << ',';
        if (row.has_lower) out << row.lower_bound.str();
        out << ',';
        if (row.has_conjectural) out << row.conjectural_lower.str();
        out << ',' << row.exact_or_incumbent << ',' << (row.exact ? "true" : "false") << ','
            << row.constructive_size << ',' << row.seconds << '\n';
    }
    return out.str();
}

std::uint64_t report_digest(const ExperimentReport& report) {
    return fnv1a64(report_to_json(report, false).dump());
}

}  // namespace fractalsep
