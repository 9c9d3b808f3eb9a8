// priotsp command-line tool: solve, bench, gen, bound.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "priotsp/baselines.hpp"
#include "priotsp/bench.hpp"
#include "priotsp/bounds.hpp"
#include "priotsp/error.hpp"
#include "priotsp/priority.hpp"
#include "priotsp/tsplib.hpp"

namespace fs = std::filesystem;
using namespace priotsp;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(fmt::format("{}: '{}' is not a number", what, s));
    }
}

/// "0,0.5,1" -> the same list for all five exponents.
ExponentGrid parse_grid(const std::string& spec) {
    std::vector<double> values;
    for (const auto& tok : split(spec, ',')) values.push_back(to_double(tok, "--grid"));
    if (values.empty()) throw ConfigError("--grid: no values");
    return ExponentGrid::uniform(values);
}

ExponentCombo parse_combo(const std::string& spec) {
    const auto t = split(spec, ',');
    if (t.size() != 5) throw ConfigError("--combo expects five values alpha,beta,gamma,delta,epsilon");
    return {to_double(t[0], "--combo"), to_double(t[1], "--combo"), to_double(t[2], "--combo"),
            to_double(t[3], "--combo"), to_double(t[4], "--combo")};
}

/// "n[,count[,first_seed]]"
RandomSpec parse_random(const std::string& spec, double box) {
    const auto t = split(spec, ',');
    if (t.empty() || t.size() > 3) throw ConfigError("--random expects n[,count[,first_seed]]");
    RandomSpec r;
    r.n = static_cast<std::size_t>(std::stoull(t[0]));
    if (t.size() > 1) r.count = static_cast<std::size_t>(std::stoull(t[1]));
    if (t.size() > 2) r.first_seed = std::stoull(t[2]);
    r.box_side = box;
    return r;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

struct SolveArgs {
    std::string file;
    std::string grid = "0,0.5,1";
    std::string combo;
    std::string out;
    std::string plot;
    std::string reference_tour;
    unsigned threads = 1;
};

int cmd_solve(const SolveArgs& a) {
    const Instance inst = read_tsplib_file(a.file);
    const DistanceMatrix m = build_distance_matrix(inst);
    const CityStats stats = city_stats(m);
    std::vector<ExponentCombo> combos =
        a.combo.empty() ? parse_grid(a.grid).combos() : std::vector{parse_combo(a.combo)};
    const auto result = grid_search(m, stats, combos, a.threads);
    const auto& best = result.best;
    fmt::print("instance {}\nn {}\ncombos {}\nlength {:.2f}\ncombo {}\n", inst.name, m.size(),
               combos.size(), best.tour.length, to_string(best.combo));
    if (!a.out.empty()) write_file(a.out, write_tour(best.tour, inst.name));
    if (!a.plot.empty()) {
        std::vector<std::size_t> ref;
        if (!a.reference_tour.empty()) ref = read_tour_file(a.reference_tour);
        const auto svg = a.reference_tour.empty()
                             ? plot_tour_svg(inst, best.tour.order)
                             : plot_tour_svg(inst, best.tour.order, std::span<const std::size_t>(ref));
        write_file(a.plot, svg);
    }
    return 0;
}

struct BenchArgs {
    std::string tsplib_dir;
    std::vector<std::string> files;
    std::string optima;
    std::vector<std::string> random;
    double box = 1e6;
    std::string methods = "proposed";
    std::string grid = "0,0.5,1";
    std::string format = "csv";
    std::string out;
    std::size_t iters = 1000;
    bool bound_fallback = false;
    bool nn_all_starts = false;
    bool no_means = false;
    unsigned threads = 1;
};

int cmd_bench(const BenchArgs& a) {
    RunConfig cfg;
    if (!a.tsplib_dir.empty()) {
        std::vector<fs::path> found;
        for (const auto& e : fs::directory_iterator(a.tsplib_dir)) {
            if (e.is_regular_file() && e.path().extension() == ".tsp") found.push_back(e.path());
        }
        std::sort(found.begin(), found.end());
        if (found.empty()) throw IoError("no .tsp files in '" + a.tsplib_dir + "'");
        cfg.instance_files = std::move(found);
    }
    for (const auto& f : a.files) cfg.instance_files.emplace_back(f);
    if (!a.optima.empty()) cfg.optima = load_optima_file(a.optima);
    for (const auto& r : a.random) {
        const auto spec = parse_random(r, a.box);
        std::cerr << fmt::format("random n={} seeds {}..{}\n", spec.n, spec.first_seed,
                                 spec.first_seed + spec.count - 1);
        cfg.random.push_back(spec);
    }
    cfg.methods.clear();
    for (const auto& m : split(a.methods, ',')) cfg.methods.push_back(method_from_string(m));
    cfg.grid = parse_grid(a.grid);
    cfg.ascent.max_iters = a.iters;
    cfg.bound_fallback = a.bound_fallback;
    cfg.nn_all_starts = a.nn_all_starts;
    cfg.threads = a.threads;
    const auto format = report_format_from_string(a.format);

    const auto records = run_benchmark(cfg);
    const auto text = render_report(records, format, !a.no_means);
    if (a.out.empty()) {
        std::cout << text;
    } else {
        write_file(a.out, text);
    }
    return 0;
}

int cmd_gen(std::size_t n, std::uint64_t seed, double box, const std::string& out) {
    const auto inst = generate_random_euclidean(n, seed, box);
    const auto text = write_tsplib(inst);
    if (out.empty()) {
        std::cout << text;
    } else {
        write_file(out, text);
    }
    return 0;
}

int cmd_bound(const std::string& file, std::size_t iters) {
    const Instance inst = read_tsplib_file(file);
    const DistanceMatrix m = build_distance_matrix(inst);
    const auto combos = ExponentGrid::standard().combos();
    const double hint = grid_search(m, city_stats(m), combos).best.tour.length;
    AscentOptions opt;
    opt.max_iters = iters;
    const auto lb = held_karp_bound(m, hint, opt);
    fmt::print("instance {}\nn {}\nupper_bound {:.2f}\nbound {:.4f}\niterations {}\n", inst.name,
               m.size(), hint, lb.bound, lb.iterations_used);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Priority-driven TSP tour construction, baselines and benchmark harness"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* s = app.add_subcommand("solve", "Grid-search construction on a TSPLIB file");
    s->add_option("file", solve.file, "TSPLIB instance")->required()->check(CLI::ExistingFile);
    s->add_option("--grid", solve.grid, "Exponent values shared by all five exponents");
    s->add_option("--combo", solve.combo, "Single combo alpha,beta,gamma,delta,epsilon");
    s->add_option("--out", solve.out, "Write the best tour in TSPLIB .tour format");
    s->add_option("--plot", solve.plot, "Write an SVG plot of the best tour");
    s->add_option("--reference-tour", solve.reference_tour, "Tour file drawn dashed in the plot")
        ->check(CLI::ExistingFile);
    s->add_option("--threads", solve.threads, "Worker threads for the grid");

    BenchArgs bench;
    auto* b = app.add_subcommand("bench", "Run methods over instance sets and report errors");
    b->add_option("--tsplib", bench.tsplib_dir, "Directory of .tsp files")->check(CLI::ExistingDirectory);
    b->add_option("--file", bench.files, "Individual .tsp files")->check(CLI::ExistingFile);
    b->add_option("--optima", bench.optima, "Known-optima fixture")->check(CLI::ExistingFile);
    b->add_option("--random", bench.random, "Generated instances n[,count[,first_seed]] (default 15 seeds from 1)");
    b->add_option("--box", bench.box, "Side of the square for generated instances");
    b->add_option("--methods", bench.methods, "Comma list of proposed,nn,greedy,cw");
    b->add_option("--grid", bench.grid, "Exponent values shared by all five exponents");
    b->add_option("--format", bench.format, "csv or md");
    b->add_option("--out", bench.out, "Output file (default stdout)");
    b->add_option("--iters", bench.iters, "Held-Karp ascent iterations");
    b->add_flag("--bound-fallback", bench.bound_fallback,
                "Use the Held-Karp bound for files without a known optimum");
    b->add_flag("--nn-all-starts", bench.nn_all_starts, "Nearest neighbor from every start city");
    b->add_flag("--no-means", bench.no_means, "Omit per-group mean rows");
    b->add_option("--threads", bench.threads, "Worker threads for the grid");

    std::size_t gen_n = 100;
    std::uint64_t gen_seed = 1;
    double gen_box = 1e6;
    std::string gen_out;
    auto* g = app.add_subcommand("gen", "Write a random uniform Euclidean instance");
    g->add_option("--n", gen_n, "Number of cities")->required();
    g->add_option("--seed", gen_seed, "Seed")->required();
    g->add_option("--box", gen_box, "Side of the square");
    g->add_option("--out", gen_out, "Output .tsp file (default stdout)");

    std::string bound_file;
    std::size_t bound_iters = 1000;
    auto* lb = app.add_subcommand("bound", "Held-Karp subgradient lower bound");
    lb->add_option("file", bound_file, "TSPLIB instance")->required()->check(CLI::ExistingFile);
    lb->add_option("--iters", bound_iters, "Ascent iterations");

    CLI11_PARSE(app, argc, argv);

    try {
        if (s->parsed()) return cmd_solve(solve);
        if (b->parsed()) return cmd_bench(bench);
        if (g->parsed()) return cmd_gen(gen_n, gen_seed, gen_box, gen_out);
        if (lb->parsed()) return cmd_bound(bound_file, bound_iters);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
