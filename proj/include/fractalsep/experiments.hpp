#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fractalsep/io.hpp"

namespace fractalsep {

// Disk cache for generated graphs, keyed by a content hash of (params, k,
// kind).  An empty directory disables it; corrupt entries are rebuilt.
struct GraphCache {
    std::string dir;

    LevelGraph level(const FractalParams& params, int k, std::int64_t max_vertices) const;
    LevelGraph complete_lines(const FractalParams& params, int k,
                              std::int64_t max_vertices) const;
};

std::uint64_t fnv1a64(std::string_view bytes);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
};

// Ordinary least squares on (log n, log value).  Wants >= 3 rows, positive
// values, and at least two distinct n.
FitResult fit_exponent(const std::vector<std::pair<double, double>>& rows);

// Enumerated counts against the closed-form predictions.  A mismatch makes a
// failing row, not an exception.
struct CountCheckRow {
    int k = 0;
    std::int64_t enumerated_vertices = 0;
    BigInt formula_vertices = 0;
    std::vector<std::int64_t> lines_per_direction;  // enumerated, one per axis
    BigInt formula_lines = 0;                       // N^k
    std::int64_t complete_vertices = 0;             // enumerated |C_k|
    bool has_closed_form = false;                   // carpet: 2*6^k - 4^k
    BigInt closed_form = 0;
    bool ok = false;
    std::string note;
};

std::vector<CountCheckRow> run_count_checks(const FractalParams& params, int k_max,
                                            std::int64_t max_vertices = kDefaultVertexBudget,
                                            const GraphCache& cache = {});

// Lower bound / exact-or-incumbent / constructive upper bound per level of
// the complete-lines family.  Certified lower bounds exist for m = 1 only;
// for m > 1 the sparsest-plane size is reported separately as conjectural.
struct SandwichRow {
    int k = 0;
    std::int64_t n = 0;
    bool has_lower = false;
    BigInt lower_bound = 0;
    std::string lower_method;      // "direct-line", "path-congestion", or both
    bool has_conjectural = false;
    BigInt conjectural_lower = 0;  // N^k, the sparsest plane
    std::int64_t exact_or_incumbent = 0;
    bool exact = false;
    std::int64_t constructive_size = 0;
    BigInt constructive_budget = 0;  // the proven envelope for this level
    double seconds = 0.0;
};

struct SandwichOptions {
    double epsilon = 0.5;
    std::int64_t max_vertices = 8'000'000;
    std::int64_t exact_cap = 60;      // run branch-and-bound when n <= cap
    std::int64_t node_limit = 5'000'000;
    std::int64_t pair_budget = kDefaultPairBudget;
    GraphCache cache;
};

std::vector<SandwichRow> run_bound_sandwich(const FractalParams& params, int k_min, int k_max,
                                            const SandwichOptions& opt = {});

enum class Column { kLower, kExactOrIncumbent, kConstructive };

std::vector<std::pair<double, double>> select_column(const std::vector<SandwichRow>& rows,
                                                     Column column);

struct ExperimentReport {
    FractalParams params;
    double target_exponent = 0.0;
    std::vector<CountCheckRow> count_checks;
    std::vector<SandwichRow> sandwich;
    bool has_constructive_fit = false;
    FitResult constructive_fit;
    bool has_lower_fit = false;
    FitResult lower_fit;
    double total_seconds = 0.0;
};

ExperimentReport run_experiment(const FractalParams& params, int k_counts, int k_min,
                                int k_max, const SandwichOptions& opt = {});

json report_to_json(const ExperimentReport& report, bool include_timings = true);
std::string report_to_csv(const ExperimentReport& report);

// FNV-1a over the canonical dump with timings stripped; stable across reruns.
std::uint64_t report_digest(const ExperimentReport& report);

}  // namespace fractalsep
