#include <filesystem>
#include <stdexcept>
#include <string>

#include <doctest.h>

#include "fractalsep/io.hpp"
#include "fractalsep/paths.hpp"
#include "fractalsep/separation.hpp"

using namespace fractalsep;

namespace {

std::string scratch_dir() {
    auto dir = std::filesystem::temp_directory_path() / "fractalsep-io-tests";
    std::filesystem::create_directories(dir);
    return dir.string();
}

std::size_t count_occurrences(const std::string& hay, const std::string& needle) {
    std::size_t count = 0;
    for (std::size_t pos = hay.find(needle); pos != std::string::npos;
         pos = hay.find(needle, pos + needle.size()))
        ++count;
    return count;
}

}  // namespace

TEST_CASE("params survive a json round trip") {
    FractalParams p = FractalParams::create(2, 8, {1, 3, 6}, 1);
    CHECK(params_from_json(params_to_json(p)) == p);
    CHECK(params_from_json(params_to_json(FractalParams::menger())) == FractalParams::menger());
    json bad = params_to_json(p);
    bad["b"] = 2;
    CHECK_THROWS_AS(params_from_json(bad), std::invalid_argument);
}

TEST_CASE("bigint json degrades to strings only past int64") {
    CHECK(bigint_to_json(BigInt(42)).is_number_integer());
    CHECK(bigint_to_json(BigInt("9223372036854775807")).is_number_integer());
    json wide = bigint_to_json(BigInt("9223372036854775808"));
    CHECK(wide.is_string());
    CHECK(wide.get<std::string>() == "9223372036854775808");
}

TEST_CASE("graphs survive a save/load round trip") {
    std::string dir = scratch_dir();
    LevelGraph g = build_level_graph(FractalParams::carpet(), 2);
    LevelGraph c = build_complete_lines_subgraph(FractalParams::carpet(), 2);

    save_graph(g, dir + "/level2");
    LevelGraph g2 = load_graph(dir + "/level2");
    CHECK(g2.same_vertices_and_edges(g));
    CHECK(g2.params == g.params);
    CHECK(g2.k == 2);
    CHECK(g2.kind == "level");

    save_graph(c, dir + "/lines2");
    LevelGraph c2 = load_graph(dir + "/lines2");
    CHECK(c2.same_vertices_and_edges(c));
    CHECK(c2.kind == "complete-lines");
}

TEST_CASE("loading rejects tampered files") {
    std::string dir = scratch_dir();
    LevelGraph g = build_level_graph(FractalParams::carpet(), 1);
    save_graph(g, dir + "/tamper");

    SUBCASE("header vertex count") {
        std::string header = read_text_file(dir + "/tamper.json");
        auto pos = header.find("\"n\": 8");
        REQUIRE(pos != std::string::npos);
        header.replace(pos, 6, "\"n\": 7");
        write_text_file(dir + "/tamper.json", header);
        CHECK_THROWS_AS(load_graph(dir + "/tamper"), std::invalid_argument);
    }
    SUBCASE("edge list") {
        std::string edges = read_text_file(dir + "/tamper.edges");
        write_text_file(dir + "/tamper.edges", edges + "6 7\n");
        CHECK_THROWS_AS(load_graph(dir + "/tamper"), std::invalid_argument);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_graph(dir + "/no-such-stem"), std::invalid_argument);
    }
}

TEST_CASE("svg rendering is stable and complete") {
    LevelGraph g1 = build_level_graph(FractalParams::carpet(), 1);
    std::string svg = render_svg(g1);
    CHECK(svg == render_svg(g1));
    CHECK(count_occurrences(svg, "<rect") == 9);  // 8 cells + background
    CHECK(svg.find("viewBox=\"0 0 3 3\"") != std::string::npos);
    CHECK(count_occurrences(svg, "#d97706") == 0);

    LevelGraph g2 = build_level_graph(FractalParams::carpet(), 2);
    std::string highlighted = render_svg(g2, true);
    CHECK(count_occurrences(highlighted, "#d97706") == 56);
    CHECK(count_occurrences(highlighted, "<rect") == 65);

    CHECK_THROWS_AS(render_svg(build_level_graph(FractalParams::menger(), 1)),
                    std::invalid_argument);
}

TEST_CASE("cut results serialize with the contract fields") {
    LevelGraph c1 = build_complete_lines_subgraph(FractalParams::carpet(), 1);
    CutResult r = cut_epsilon_exact(c1, 0.5);
    json j = cut_result_to_json(r);
    CHECK(j["epsilon"] == 0.5);
    CHECK(j["cut_size"] == 2);
    CHECK(j["proved_optimal"] == true);
    CHECK(j["cutset"].is_array());
    CHECK(j["cutset"].size() == 2);
    CHECK(j["cutset"][0].is_array());  // coordinate rows, not ids
    CHECK(j["largest_component"].is_number_integer());
    CHECK(j["valid"] == true);
}

TEST_CASE("path systems serialize with their bound") {
    LevelGraph c1 = build_complete_lines_subgraph(FractalParams::carpet(), 1);
    PathSystem ps = build_canonical_paths(c1);
    PathBound bound = path_lower_bound(ps);
    json j = path_system_to_json(ps, bound);
    CHECK(j["n"] == 8);
    CHECK(j["pair_count"] == 64);
    CHECK(j["max_congestion"].is_number_integer());
    CHECK(j["bound"].is_number_integer());
    CHECK(j["conditional"] == true);
    CHECK(j["witness_size"].is_null());
}
