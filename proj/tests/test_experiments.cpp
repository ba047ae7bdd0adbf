#include <cmath>
#include <filesystem>
#include <stdexcept>

#include <doctest.h>

#include "fractalsep/experiments.hpp"

using namespace fractalsep;

TEST_CASE("fnv1a64 matches the reference vectors") {
    CHECK(fnv1a64("") == 14695981039346656037ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("fit_exponent recovers a synthetic power law") {
    std::vector<std::pair<double, double>> rows;
    for (int i = 1; i <= 6; ++i) {
        double n = std::pow(10.0, i);
        rows.emplace_back(n, 3.5 * std::pow(n, 0.7));
    }
    FitResult fit = fit_exponent(rows);
    CHECK(fit.slope == doctest::Approx(0.7).epsilon(1e-9));
    CHECK(fit.intercept == doctest::Approx(std::log(3.5)).epsilon(1e-9));
    CHECK(fit.max_residual < 1e-9);

    CHECK_THROWS_AS(fit_exponent({{10.0, 1.0}, {20.0, 2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(fit_exponent({{1.0, 1.0}, {1.0, 2.0}, {1.0, 3.0}}), std::invalid_argument);
    CHECK_THROWS_AS(fit_exponent({{10.0, 1.0}, {20.0, 0.0}, {30.0, 3.0}}),
                    std::invalid_argument);
}

TEST_CASE("carpet counting rows check out") {
    auto rows = run_count_checks(FractalParams::carpet(), 3);
    REQUIRE(rows.size() == 4);
    for (const auto& row : rows) {
        CHECK(row.ok);
        CHECK(row.note.empty());
        CHECK(row.lines_per_direction.size() == 2);
    }
    CHECK(rows[0].enumerated_vertices == 1);
    CHECK(rows[3].enumerated_vertices == 512);
    CHECK(rows[3].formula_vertices == 512);
    CHECK(rows[3].complete_vertices == 368);
    CHECK(rows[3].has_closed_form);
    CHECK(rows[3].closed_form == 368);
    CHECK(rows[3].lines_per_direction == std::vector<std::int64_t>{8, 8});
    CHECK(rows[3].formula_lines == 8);
}

TEST_CASE("menger counting rows check out") {
    auto rows = run_count_checks(FractalParams::menger(), 2);
    REQUIRE(rows.size() == 3);
    for (const auto& row : rows) {
        CHECK(row.ok);
        CHECK_FALSE(row.has_closed_form);
    }
    CHECK(rows[2].enumerated_vertices == 400);
    CHECK(rows[2].lines_per_direction == std::vector<std::int64_t>{16, 16, 16});
    // Envelope (Nb)^k <= |C_k| <= d (Nb)^k.
    CHECK(rows[2].complete_vertices >= 144);
    CHECK(rows[2].complete_vertices <= 432);
}

TEST_CASE("carpet sandwich rows are ordered and certified") {
    auto rows = run_bound_sandwich(FractalParams::carpet(), 0, 2);
    REQUIRE(rows.size() == 3);
    for (const auto& row : rows) {
        CHECK(row.has_lower);
        CHECK_FALSE(row.has_conjectural);
        CHECK(row.lower_bound <= row.exact_or_incumbent);
        CHECK(row.exact_or_incumbent <= row.constructive_size);
        CHECK(BigInt(row.constructive_size) <= row.constructive_budget);
    }
    CHECK(rows[1].n == 8);
    CHECK(rows[1].exact);
    CHECK(rows[1].exact_or_incumbent == 2);
    CHECK(rows[2].n == 56);
    CHECK(rows[2].exact);
    CHECK(rows[2].exact_or_incumbent == 4);
    CHECK(rows[2].lower_bound >= 2);
}

TEST_CASE("m > 1 families get conjectural plane sizes, not certificates") {
    SandwichOptions opt;
    auto rows = run_bound_sandwich(FractalParams::create(3, 3, {1}, 2), 1, 1, opt);
    REQUIRE(rows.size() == 1);
    CHECK_FALSE(rows[0].has_lower);
    CHECK(rows[0].has_conjectural);
    CHECK(rows[0].conjectural_lower == 8);  // N = 8 line configurations
    CHECK(rows[0].exact_or_incumbent >= 1);
}

TEST_CASE("epsilon other than 1/2 disables the envelope columns") {
    SandwichOptions opt;
    opt.epsilon = 0.75;
    auto rows = run_bound_sandwich(FractalParams::carpet(), 1, 1, opt);
    REQUIRE(rows.size() == 1);
    CHECK_FALSE(rows[0].has_lower);
    CHECK(rows[0].constructive_size == 0);
    CHECK(rows[0].exact);
    CHECK(rows[0].exact_or_incumbent >= 1);

    opt.epsilon = 1.5;
    CHECK_THROWS_AS(run_bound_sandwich(FractalParams::carpet(), 1, 1, opt),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_bound_sandwich(FractalParams::carpet(), -1, 1, SandwichOptions{}),
                    std::invalid_argument);
}

TEST_CASE("column selection for fitting") {
    auto rows = run_bound_sandwich(FractalParams::carpet(), 0, 2);
    auto pts = select_column(rows, Column::kConstructive);
    REQUIRE(pts.size() == 3);
    CHECK(pts[2].first == doctest::Approx(56.0));
    CHECK(pts[2].second ==
          doctest::Approx(static_cast<double>(rows[2].constructive_size)));
    CHECK(select_column(rows, Column::kLower).size() == 3);
    CHECK(select_column(rows, Column::kExactOrIncumbent).size() == 3);
}

TEST_CASE("experiment reports are complete and digest-stable") {
    ExperimentReport report = run_experiment(FractalParams::carpet(), 2, 0, 2);
    CHECK(report.target_exponent == doctest::Approx(std::log(2.0) / std::log(6.0)));
    CHECK(report.count_checks.size() == 3);
    CHECK(report.sandwich.size() == 3);
    CHECK(report.has_constructive_fit);
    CHECK(report.constructive_fit.slope > 0.0);
    CHECK(report.total_seconds >= 0.0);

    json j = report_to_json(report);
    CHECK(j["params"]["b"] == 3);
    CHECK(j["sandwich"].size() == 3);
    CHECK(j["sandwich"][2]["n"] == 56);
    CHECK(j["sandwich"][2].contains("seconds"));
    json stripped = report_to_json(report, false);
    CHECK_FALSE(stripped["sandwich"][2].contains("seconds"));
    CHECK_FALSE(stripped.contains("total_seconds"));

    std::string csv = report_to_csv(report);
    CHECK(csv.rfind("k,n,lower_bound,conjectural_lower,exact_or_incumbent,exact,"
                    "constructive_size,seconds\n", 0) == 0);

    // The digest ignores wall-clock noise, so reruns match.
    ExperimentReport again = run_experiment(FractalParams::carpet(), 2, 0, 2);
    CHECK(report_digest(report) == report_digest(again));
}

TEST_CASE("graph cache round trip") {
    auto dir = std::filesystem::temp_directory_path() / "fractalsep-cache-test";
    std::filesystem::remove_all(dir);
    GraphCache cache{dir.string()};

    LevelGraph first = cache.complete_lines(FractalParams::carpet(), 2, kDefaultVertexBudget);
    CHECK(first.n() == 56);
    bool wrote_files = false;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.path().extension() == ".json") wrote_files = true;
    CHECK(wrote_files);

    LevelGraph second = cache.complete_lines(FractalParams::carpet(), 2, kDefaultVertexBudget);
    CHECK(second.same_vertices_and_edges(first));

    // Corrupt every cached header; the cache must fall back to rebuilding.
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.path().extension() == ".json")
            write_text_file(entry.path().string(), "{ not json");
    LevelGraph third = cache.complete_lines(FractalParams::carpet(), 2, kDefaultVertexBudget);
    CHECK(third.same_vertices_and_edges(first));

    std::filesystem::remove_all(dir);
}
