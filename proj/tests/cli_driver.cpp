#include <cstdlib>
#include <filesystem>
#include <string>

#include <sys/wait.h>

#include <doctest.h>

#include "fractalsep/io.hpp"

using namespace fractalsep;

namespace {

struct CliOutput {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::filesystem::path work_dir() {
    auto dir = std::filesystem::temp_directory_path() / "fractalsep-cli-tests";
    std::filesystem::create_directories(dir);
    return dir;
}

CliOutput run_cli(const std::string& args) {
    auto dir = work_dir();
    std::string out_file = (dir / "cli_stdout.txt").string();
    std::string err_file = (dir / "cli_stderr.txt").string();
    std::string cmd = std::string("\"") + CLI_PATH + "\" " + args + " > " + out_file +
                      " 2> " + err_file;
    int status = std::system(cmd.c_str());
    CliOutput result;
    if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
    result.out = read_text_file(out_file);
    result.err = read_text_file(err_file);
    return result;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("generate writes a loadable graph") {
    auto stem = (work_dir() / "gen-level2").string();
    CliOutput r = run_cli("generate --k 2 --out " + stem);
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "n=64"));
    CHECK(contains(r.out, "match=yes"));

    LevelGraph loaded = load_graph(stem);
    LevelGraph direct = build_level_graph(FractalParams::carpet(), 2);
    CHECK(loaded.same_vertices_and_edges(direct));
}

TEST_CASE("generate covers other parameter sets and the lines subgraph") {
    auto stem = (work_dir() / "gen-b8").string();
    CliOutput r = run_cli("generate --d 2 --b 8 --A 1,3,6 --m 1 --k 2 --out " + stem);
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "n=3025"));
    CHECK(contains(r.out, "match=yes"));

    auto lines_stem = (work_dir() / "gen-lines2").string();
    CliOutput rl = run_cli("generate --complete-lines --k 2 --out " + lines_stem);
    CHECK(rl.exit_code == 0);
    CHECK(contains(rl.out, "n=56"));
    CHECK(load_graph(lines_stem).kind == "complete-lines");
}

TEST_CASE("render is reproducible and reports highlights") {
    auto svg1 = (work_dir() / "render1.svg").string();
    auto svg2 = (work_dir() / "render2.svg").string();
    CliOutput r1 = run_cli("render --k 2 --highlight-complete --out " + svg1);
    CliOutput r2 = run_cli("render --k 2 --highlight-complete --out " + svg2);
    CHECK(r1.exit_code == 0);
    CHECK(contains(r1.out, "cells=64"));
    CHECK(contains(r1.out, "highlighted=56"));
    CHECK(read_text_file(svg1) == read_text_file(svg2));

    CliOutput bad = run_cli("render --d 3 --b 3 --A 1 --m 1 --k 1");
    CHECK(bad.exit_code == 2);
    CHECK(contains(bad.err, "d = 2"));
}

TEST_CASE("exact cut emits clean json on stdout") {
    CliOutput r = run_cli("cut --complete-lines --k 1 --exact");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["cut_size"] == 2);
    CHECK(j["proved_optimal"] == true);
    CHECK(j["epsilon"] == 0.5);
}

TEST_CASE("constructive cut on the full level graph") {
    CliOutput r = run_cli("cut --k 2");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["valid"] == true);
    CHECK(j["method"] == "constructive");
    CHECK(j["cut_size"].get<std::int64_t>() <= 61);  // level-1 envelope 36*2 - 11

    CliOutput bad = run_cli("cut --k 2 --epsilon 0.75");
    CHECK(bad.exit_code == 2);
    CHECK(contains(bad.err, "--exact"));
}

TEST_CASE("paths reports the certified bound") {
    CliOutput r = run_cli("paths --k 1");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["n"] == 8);
    CHECK(j["pair_count"] == 64);
    CHECK(j["conditional"] == false);
    CHECK(j["witness_size"] == 2);
    CHECK(j["bound"].get<std::int64_t>() >= 1);
}

TEST_CASE("experiment suite writes a report plus digest line") {
    auto path = (work_dir() / "counts.json").string();
    CliOutput r = run_cli("experiment --suite carpet-counts --out " + path);
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "digest="));
    json j = json::parse(read_text_file(path));
    REQUIRE(j["count_checks"].size() == 6);
    for (const auto& row : j["count_checks"]) CHECK(row["ok"] == true);
    CHECK(j["sandwich"].empty());

    CliOutput again = run_cli("experiment --suite carpet-counts --out " + path);
    auto digest_of = [](const std::string& text) {
        auto pos = text.find("digest=");
        return text.substr(pos, 23);
    };
    CHECK(digest_of(r.out) == digest_of(again.out));
}

TEST_CASE("experiment csv goes to stdout") {
    CliOutput r = run_cli("experiment --format csv --k-min 0 --k-max 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("k,n,", 0) == 0);
    CHECK(contains(r.out, "\n0,1,"));
    CHECK(contains(r.out, "\n1,8,"));
}

TEST_CASE("experiment honors the cache directory flag and variable") {
    auto report1 = (work_dir() / "cache-report1.json").string();
    auto report2 = (work_dir() / "cache-report2.json").string();
    auto digest_of = [](const std::string& text) {
        auto pos = text.find("digest=");
        REQUIRE(pos != std::string::npos);
        return text.substr(pos, 23);
    };

    auto cache1 = work_dir() / "cache-flag";
    std::filesystem::remove_all(cache1);
    CliOutput r = run_cli("experiment --k-counts 1 --k-max -1 --out " + report1 +
                          " --cache-dir " + cache1.string());
    CHECK(r.exit_code == 0);
    CHECK(std::filesystem::exists(cache1));
    bool has_entries = false;
    for (const auto& entry : std::filesystem::directory_iterator(cache1))
        if (entry.path().extension() == ".json") has_entries = true;
    CHECK(has_entries);

    auto cache2 = work_dir() / "cache-env";
    std::filesystem::remove_all(cache2);
    setenv("FRACTALSEP_CACHE_DIR", cache2.string().c_str(), 1);
    CliOutput re = run_cli("experiment --k-counts 1 --k-max -1 --out " + report2);
    unsetenv("FRACTALSEP_CACHE_DIR");
    CHECK(re.exit_code == 0);
    CHECK(std::filesystem::exists(cache2));
    CHECK(digest_of(r.out) == digest_of(re.out));
}

TEST_CASE("failure modes map to distinct exit codes") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("generate --no-such-flag").exit_code == 2);
    CHECK(run_cli("generate --b 2").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code != 0);
    CHECK(run_cli("experiment --suite no-such-suite").exit_code == 2);
    CHECK(run_cli("experiment --format yaml").exit_code == 2);

    CliOutput budget = run_cli("generate --k 8 --max-vertices 1000");
    CHECK(budget.exit_code == 3);
    CHECK(contains(budget.err, "budget"));
}
