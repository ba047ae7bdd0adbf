#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fractalsep/counting.hpp"
#include "fractalsep/experiments.hpp"
#include "fractalsep/io.hpp"
#include "fractalsep/paths.hpp"

namespace {

using namespace fractalsep;

struct ParamFlags {
    int d = 2;
    int b = 3;
    std::vector<int> A{1};
    int m = 1;
    int k = 1;
};

void add_param_flags(CLI::App* cmd, ParamFlags& pf) {
    cmd->add_option("--d", pf.d, "dimension (>= 2)");
    cmd->add_option("--b", pf.b, "digit base (>= 3)");
    cmd->add_option("--A", pf.A, "restricted digit set, comma separated")->delimiter(',');
    cmd->add_option("--m", pf.m, "max restricted digits per column");
    cmd->add_option("--k", pf.k, "iteration level");
}

FractalParams to_params(const ParamFlags& pf) {
    return FractalParams::create(pf.d, pf.b, pf.A, pf.m);
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
}

int run_generate(const ParamFlags& pf, bool complete, std::int64_t max_vertices,
                 const std::string& out_stem) {
    FractalParams params = to_params(pf);
    LevelGraph g = complete ? build_complete_lines_subgraph(params, pf.k, max_vertices)
                            : build_level_graph(params, pf.k, max_vertices);
    std::cout << "n=" << g.n() << " edges=" << g.edge_count();
    if (!complete) {
        BigInt predicted = vertex_count_formula(params, pf.k);
        std::cout << " formula=" << predicted
                  << (BigInt(g.n()) == predicted ? " match=yes" : " match=NO");
    }
    std::cout << '\n';
    save_graph(g, out_stem);
    std::cout << "wrote " << out_stem << ".json and " << out_stem << ".edges\n";
    return 0;
}

int run_render(const ParamFlags& pf, bool highlight, std::int64_t max_vertices,
               const std::string& out_path) {
    FractalParams params = to_params(pf);
    LevelGraph g = build_level_graph(params, pf.k, max_vertices);
    std::string svg = render_svg(g, highlight);
    emit(svg, out_path);
    std::cout << "cells=" << g.n();
    if (highlight) {
        std::int64_t highlighted = 0;
        std::vector<std::int64_t> fixed(1);
        for (std::int64_t id = 0; id < g.n(); ++id) {
            fixed[0] = g.coord(id, 1);
            bool on = is_complete_line(params, pf.k, 0, fixed);
            if (!on) {
                fixed[0] = g.coord(id, 0);
                on = is_complete_line(params, pf.k, 1, fixed);
            }
            if (on) ++highlighted;
        }
        std::cout << " highlighted=" << highlighted;
    }
    std::cout << '\n';
    if (!out_path.empty()) std::cout << "wrote " << out_path << '\n';
    return 0;
}

int run_cut(const ParamFlags& pf, bool complete, bool exact, double epsilon,
            std::int64_t max_vertices, std::int64_t node_limit, double time_limit,
            const std::string& out_path) {
    FractalParams params = to_params(pf);
    LevelGraph g = complete ? build_complete_lines_subgraph(params, pf.k, max_vertices)
                            : build_level_graph(params, pf.k, max_vertices);
    CutResult r;
    if (exact) {
        BnbOptions opt;
        opt.node_limit = node_limit;
        opt.time_limit_sec = time_limit;
        r = cut_epsilon_exact(g, epsilon, opt);
    } else {
        if (epsilon != 0.5)
            throw std::invalid_argument(
                "the constructive cutter targets epsilon = 1/2; use --exact for other values");
        r = constructive_cut(g);
    }
    emit(cut_result_to_json(r).dump(2) + "\n", out_path);
    if (!out_path.empty())
        std::cout << "cut_size=" << r.cut_size() << " proved_optimal="
                  << (r.proved_optimal ? "yes" : "no") << " wrote " << out_path << '\n';
    return 0;
}

int run_paths(const ParamFlags& pf, std::int64_t max_vertices, std::int64_t max_pairs,
              const std::string& out_path) {
    FractalParams params = to_params(pf);
    LevelGraph c = build_complete_lines_subgraph(params, pf.k, max_vertices);
    PathSystem ps = build_canonical_paths(c, max_pairs);
    std::optional<CutResult> witness = single_plane_cut(c);
    PathBound bound = witness ? path_lower_bound(ps, *witness) : path_lower_bound(ps);
    emit(path_system_to_json(ps, bound).dump(2) + "\n", out_path);
    if (!out_path.empty())
        std::cout << "max_congestion=" << ps.max_congestion << " bound=" << bound.value
                  << " wrote " << out_path << '\n';
    return 0;
}

int run_experiment(const ParamFlags& pf, int k_counts, int k_min, int k_max,
                   const SandwichOptions& opt, const std::string& format,
                   const std::string& out_path) {
    FractalParams params = to_params(pf);
    ExperimentReport report = run_experiment(params, k_counts, k_min, k_max, opt);
    std::string text = format == "csv" ? report_to_csv(report)
                                       : report_to_json(report, true).dump(2) + "\n";
    emit(text, out_path);
    if (!out_path.empty()) {
        char digest[32];
        std::snprintf(digest, sizeof digest, "%016llx",
                      static_cast<unsigned long long>(report_digest(report)));
        std::cout << "digest=" << digest;
        if (report.has_constructive_fit)
            std::cout << " constructive_slope=" << report.constructive_fit.slope;
        if (report.has_lower_fit) std::cout << " lower_slope=" << report.lower_fit.slope;
        std::cout << " target=" << report.target_exponent << '\n';
        std::cout << "wrote " << out_path << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractal lattice graphs and their balanced separators"};
    app.require_subcommand(1);

    ParamFlags pf;
    std::int64_t max_vertices = kDefaultVertexBudget;
    std::string out_path;

    auto* generate = app.add_subcommand("generate", "build a level graph and save it");
    add_param_flags(generate, pf);
    bool gen_complete = false;
    generate->add_flag("--complete-lines", gen_complete,
                       "build the complete-lines subgraph instead of the full level");
    generate->add_option("--max-vertices", max_vertices, "vertex budget");
    std::string gen_stem = "graph";
    generate->add_option("--out", gen_stem, "output stem (stem.json + stem.edges)");

    auto* render = app.add_subcommand("render", "render a d=2 level as SVG");
    add_param_flags(render, pf);
    bool highlight = false;
    render->add_flag("--highlight-complete", highlight,
                     "paint cells of the complete-lines subgraph");
    render->add_option("--max-vertices", max_vertices, "vertex budget");
    render->add_option("--out", out_path, "output file (stdout when omitted)");

    auto* cut = app.add_subcommand("cut", "compute a balanced vertex cut");
    add_param_flags(cut, pf);
    bool cut_complete = false, cut_exact = false;
    double epsilon = 0.5, time_limit = 0.0;
    std::int64_t node_limit = 5'000'000;
    cut->add_flag("--complete-lines", cut_complete, "cut the complete-lines subgraph");
    cut->add_flag("--exact", cut_exact, "branch-and-bound instead of the constructive cutter");
    cut->add_option("--epsilon", epsilon, "balance parameter in (0,1)");
    cut->add_option("--max-vertices", max_vertices, "vertex budget");
    cut->add_option("--bb-node-limit", node_limit, "search node budget");
    cut->add_option("--time-limit", time_limit, "search wall-clock limit in seconds (0 = off)");
    cut->add_option("--out", out_path, "output file (stdout when omitted)");

    auto* paths = app.add_subcommand("paths", "canonical path system over complete lines");
    add_param_flags(paths, pf);
    std::int64_t max_pairs = kDefaultPairBudget;
    paths->add_option("--max-pairs", max_pairs, "ordered pair budget");
    paths->add_option("--max-vertices", max_vertices, "vertex budget");
    paths->add_option("--out", out_path, "output file (stdout when omitted)");

    auto* experiment = app.add_subcommand("experiment", "count checks and bound sandwiches");
    add_param_flags(experiment, pf);
    int k_counts = -1, k_min = 0, k_max = -1;
    SandwichOptions opt;
    if (const char* env = std::getenv("FRACTALSEP_CACHE_DIR")) opt.cache.dir = env;
    std::string format = "json", suite;
    experiment->add_option("--k-counts", k_counts, "run count checks for k = 0..K (-1 = skip)");
    experiment->add_option("--k-min", k_min, "sandwich range start");
    experiment->add_option("--k-max", k_max, "sandwich range end (-1 = skip)");
    experiment->add_option("--epsilon", opt.epsilon, "balance parameter");
    experiment->add_option("--max-vertices", opt.max_vertices, "vertex budget");
    experiment->add_option("--exact-cap", opt.exact_cap, "exact search size cap");
    experiment->add_option("--bb-node-limit", opt.node_limit, "search node budget");
    experiment->add_option("--max-pairs", opt.pair_budget, "path system pair budget");
    experiment->add_option("--cache-dir", opt.cache.dir,
                           "graph cache directory (default $FRACTALSEP_CACHE_DIR)");
    experiment->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    experiment->add_option("--suite", suite,
                           "preset: carpet-sandwich, carpet-counts, menger-counts");
    experiment->add_option("--out", out_path, "output file (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (generate->parsed())
            return run_generate(pf, gen_complete, max_vertices, gen_stem);
        if (render->parsed()) return run_render(pf, highlight, max_vertices, out_path);
        if (cut->parsed())
            return run_cut(pf, cut_complete, cut_exact, epsilon, max_vertices, node_limit,
                           time_limit, out_path);
        if (paths->parsed()) return run_paths(pf, max_vertices, max_pairs, out_path);
        if (experiment->parsed()) {
            if (!suite.empty()) {
                if (suite == "carpet-sandwich") {
                    pf = ParamFlags{2, 3, {1}, 1, 1};
                    k_counts = -1;
                    k_min = 0;
                    k_max = 6;
                } else if (suite == "carpet-counts") {
                    pf = ParamFlags{2, 3, {1}, 1, 1};
                    k_counts = 5;
                    k_min = 0;
                    k_max = -1;
                } else if (suite == "menger-counts") {
                    pf = ParamFlags{3, 3, {1}, 1, 1};
                    k_counts = 3;
                    k_min = 0;
                    k_max = -1;
                } else {
                    throw std::invalid_argument("unknown suite: " + suite);
                }
            }
            return run_experiment(pf, k_counts, k_min, k_max, opt, format, out_path);
        }
        return 2;
    } catch (const fractalsep::budget_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
