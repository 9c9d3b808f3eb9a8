// Acceptance checks. Prints one PASS/FAIL line per criterion.
//
// Usage: priotsp_acceptance [criterion...]
// TSPLIB files are looked up as <dir>/<name>.tsp, where <dir> is
// $PRIOTSP_TSPLIB_DIR if set, otherwise the repository's data/tsplib.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "oracles.hpp"
#include "priotsp/baselines.hpp"
#include "priotsp/bench.hpp"
#include "priotsp/bounds.hpp"
#include "priotsp/priority.hpp"
#include "priotsp/tsplib.hpp"

namespace fs = std::filesystem;
using namespace priotsp;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

fs::path tsplib_dir() {
    if (const char* env = std::getenv("PRIOTSP_TSPLIB_DIR"); env && *env) return env;
    return fs::path(PRIOTSP_DATA_DIR) / "tsplib";
}

OptimaTable optima() { return load_optima_file(fs::path(PRIOTSP_DATA_DIR) / "optima.txt"); }

std::optional<Instance> find_instance(const std::string& name) {
    const auto path = tsplib_dir() / (name + ".tsp");
    if (!fs::exists(path)) return std::nullopt;
    return read_tsplib_file(path);
}

double grid_best(const Instance& inst) {
    const auto m = build_distance_matrix(inst);
    const auto combos = ExponentGrid::standard().combos();
    return grid_search(m, city_stats(m), combos).best.tour.length;
}

std::string join_names(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) out += (out.empty() ? "" : " ") + n;
    return out;
}

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

// 1. Published obtained lengths for five small instances, within 3%.
Verdict table_regression() {
    const std::vector<std::pair<std::string, double>> rows{
        {"eil51", 453}, {"berlin52", 8023}, {"eil76", 565}, {"kroA100", 22470}, {"bier127", 122461}};
    std::vector<std::string> missing, parts;
    bool ok = true;
    for (const auto& [name, published] : rows) {
        const auto inst = find_instance(name);
        if (!inst) {
            missing.push_back(name);
            continue;
        }
        const double len = grid_best(*inst);
        const double dev = 100.0 * (len - published) / published;
        const bool row_ok = std::abs(dev) <= 3.0;
        ok = ok && row_ok;
        parts.push_back(fmt::format("{} {:.0f} vs {:.0f} ({:+.2f}%){}", name, len, published, dev,
                                    row_ok ? "" : " out of range"));
    }
    if (!missing.empty()) {
        ok = false;
        parts.push_back("missing instance files: " + join_names(missing));
    }
    std::string detail;
    for (const auto& p : parts) detail += (detail.empty() ? "" : "; ") + p;
    return {ok, detail};
}

// 2. att48 with the published combo.
Verdict att48_reproduction() {
    const auto inst = find_instance("att48");
    if (!inst) return {false, "missing instance file: att48"};
    if (inst->kind != DistanceKind::Att || inst->size() != 48) {
        return {false, fmt::format("att48 has n={} and kind {}, expected 48 and ATT", inst->size(),
                                   to_string(inst->kind))};
    }
    const auto m = build_distance_matrix(*inst);
    const auto r = construct_tour(m, city_stats(m), {0.5, 1, 1, 0.5, 0});
    const double len = r.tour.length;
    const double dev = 100.0 * (len - 34839.0) / 34839.0;
    const double err = percent_error(len, 33523.0);
    const bool ok = std::abs(dev) <= 3.0 && err >= 1.0 && err <= 7.0;
    return {ok, fmt::format("length {:.0f} ({:+.2f}% vs 34839), error {:.2f}% vs 33523", len, dev, err)};
}

// 3. Mean grid-search error over the n <= 200 rows and over all 24 rows.
Verdict aggregate_quality() {
    const std::vector<std::string> small{"eil51",   "berlin52", "eil76",   "kroA100", "kroB100",
                                         "kroC100", "kroD100",  "kroE100", "lin105",  "pr107",
                                         "bier127", "ch130",    "ch150",   "kroA150", "kroB150",
                                         "d198",    "kroA200"};
    const std::vector<std::string> large{"gil262", "lin318", "d493", "dsj1000", "pr1002", "u1060", "vm1084"};
    const auto table = optima();
    std::vector<double> err_small, err_all;
    std::vector<std::string> missing;
    auto run = [&](const std::string& name, std::vector<double>* extra) {
        const auto inst = find_instance(name);
        if (!inst) {
            missing.push_back(name);
            return;
        }
        const double e = percent_error(grid_best(*inst), static_cast<double>(table.at(name)));
        err_all.push_back(e);
        if (extra) extra->push_back(e);
    };
    for (const auto& n : small) run(n, &err_small);
    for (const auto& n : large) run(n, nullptr);
    const bool complete = missing.empty();
    const double ms = mean(err_small), ma = mean(err_all);
    const bool ok = complete && ms <= 10.0 && ma <= 11.0;
    std::string detail = fmt::format("mean error {:.2f}% over {}/17 small, {:.2f}% over {}/24 all",
                                     ms, err_small.size(), ma, err_all.size());
    if (!complete) detail += "; missing instance files: " + join_names(missing);
    return {ok, detail};
}

// 4. Random uniform 100-city testbed against the Held-Karp bound.
Verdict random_testbed() {
    RunConfig cfg;
    cfg.random.push_back({100, 15, 1, 1e6});
    cfg.methods = {Method::Proposed, Method::NearestNeighbor, Method::Greedy, Method::ClarkeWright};
    const auto recs = run_benchmark(cfg);
    std::map<Method, std::vector<double>> errors;
    for (const auto& r : recs) {
        if (r.reference_kind != ReferenceKind::HeldKarpBound) return {false, "reference is not the bound"};
        errors[r.method].push_back(r.pct_error);
    }
    struct Band {
        Method method;
        double lo, hi;
    };
    const Band bands[] = {{Method::Proposed, 0.0, 11.0},
                          {Method::NearestNeighbor, 18.0, 33.0},
                          {Method::Greedy, 13.0, 26.0},
                          {Method::ClarkeWright, 6.0, 16.0}};
    bool ok = true;
    std::string detail;
    for (const auto& b : bands) {
        const auto& v = errors[b.method];
        const double m = mean(v);
        const bool in = v.size() == 15 && m >= b.lo && m <= b.hi;
        ok = ok && in;
        detail += fmt::format("{}{} {:.2f}% [{:g}, {:g}]", detail.empty() ? "" : "; ",
                              to_string(b.method), m, b.lo, b.hi);
    }
    return {ok, detail};
}

// 5. Every method against the exact optimum on small random instances.
Verdict oracle_equivalence() {
    std::mt19937_64 rng(555);
    std::size_t violations = 0, instances = 0;
    std::string first;
    auto flag = [&](const std::string& what) {
        if (violations++ == 0) first = what;
    };
    const auto combos = ExponentGrid::standard().combos();
    for (int k = 0; k < 240; ++k) {
        const std::size_t n = 4 + static_cast<std::size_t>(k) % 9;
        // Mix rounded and unrounded metrics; rounding produces ties.
        const auto m = oracle::random_matrix(n, rng, k % 2 == 0);
        ++instances;
        const auto opt = exact_optimum(m);
        if (!oracle::is_permutation_of(opt.order, n)) flag("exact tour invalid");
        const double exact = opt.length;
        if (n <= 9 && std::abs(exact - oracle::brute_force_optimum(m)) > 1e-9) flag("exact disagrees with enumeration");
        const auto stats = city_stats(m);
        std::vector<Tour> tours{grid_search(m, stats, combos).best.tour, nearest_neighbor(m),
                                greedy_edge(m), clarke_wright(m)};
        for (const auto& c : {combos.front(), combos[121], combos.back()}) {
            tours.push_back(construct_tour(m, stats, c).tour);
        }
        for (const auto& t : tours) {
            if (!validate_tour(t.order, n).ok()) flag(fmt::format("invalid tour at n={}", n));
            if (t.length < exact - 1e-9) flag(fmt::format("heuristic {} below optimum {}", t.length, exact));
        }
        const double lb = held_karp_bound(m, tours[0].length).bound;
        if (lb > exact + 1e-7) flag(fmt::format("bound {} above optimum {}", lb, exact));
    }
    return {violations == 0, fmt::format("{} instances, {} violations{}", instances, violations,
                                         violations ? "; first: " + first : "")};
}

// 6. Quadratic scaling of a single construction.
Verdict complexity_scaling() {
    const ExponentCombo combo{0.5, 1, 1, 0.5, 0};
    struct Sample {
        std::uint64_t evaluations;
        double millis;
    };
    auto measure = [&](std::size_t n, int reps) {
        const auto inst = generate_random_euclidean(n, 1, 1e6);
        const auto m = build_distance_matrix(inst);
        const auto stats = city_stats(m);
        std::uint64_t evals = construct_tour(m, stats, combo).neighbor_evaluations; // warm-up
        double best = 1e300;
        // Best of several batches damps scheduler noise.
        for (int batch = 0; batch < 5; ++batch) {
            const auto t0 = std::chrono::steady_clock::now();
            for (int r = 0; r < reps; ++r) evals = construct_tour(m, stats, combo).neighbor_evaluations;
            const double ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            best = std::min(best, ms / reps);
        }
        return Sample{evals, best};
    };
    const auto s100 = measure(100, 400);
    const auto s1000 = measure(1000, 4);
    const double eval_ratio = static_cast<double>(s1000.evaluations) / static_cast<double>(s100.evaluations);
    const double time_ratio = s1000.millis / s100.millis;
    const bool ok = eval_ratio <= 110.0 && time_ratio <= 150.0;
    return {ok, fmt::format("evaluations {} -> {} (ratio {:.1f}), time {:.4f} ms -> {:.3f} ms (ratio {:.1f})",
                            s100.evaluations, s1000.evaluations, eval_ratio, s100.millis, s1000.millis,
                            time_ratio)};
}

std::string read_all(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string drop_last_column(const std::string& csv) {
    std::stringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) {
        const auto cut = line.rfind(',');
        out += (cut == std::string::npos ? line : line.substr(0, cut)) + "\n";
    }
    return out;
}

// 7. Two CLI bench runs produce the same CSV apart from wall_millis.
Verdict determinism() {
    const fs::path dir = fs::temp_directory_path() / fmt::format("priotsp_acc_{}", std::random_device{}());
    fs::create_directories(dir);
    std::vector<std::string> files;
    for (const auto& e : fs::directory_iterator(tsplib_dir())) {
        if (e.path().extension() == ".tsp" && fs::file_size(e.path()) < 200000) files.push_back(e.path().string());
    }
    std::sort(files.begin(), files.end());
    std::string cmd = fmt::format("\"{}\" bench --random 100,3 --random 316,1,7 --methods proposed,nn,greedy,cw "
                                  "--optima \"{}/optima.txt\" --bound-fallback",
                                  PRIOTSP_CLI, PRIOTSP_DATA_DIR);
    for (const auto& f : files) cmd += fmt::format(" --file \"{}\"", f);
    std::string outputs[2];
    for (int k = 0; k < 2; ++k) {
        const auto out = dir / fmt::format("run{}.csv", k);
        const std::string full = fmt::format("{} --out \"{}\" 2>/dev/null", cmd, out.string());
        if (std::system(full.c_str()) != 0) {
            fs::remove_all(dir);
            return {false, "bench command failed: " + full};
        }
        outputs[k] = read_all(out);
    }
    fs::remove_all(dir);
    const auto a = drop_last_column(outputs[0]);
    const auto b = drop_last_column(outputs[1]);
    const auto rows = static_cast<std::size_t>(std::count(a.begin(), a.end(), '\n'));
    const bool ok = !a.empty() && a == b && outputs[0] != "";
    return {ok, fmt::format("{} CSV lines, {} files + 4 generated instances, {}", rows, files.size(),
                            a == b ? "identical without wall_millis" : "outputs differ")};
}

// 8. Property binary, each property over at least 1000 cases.
Verdict properties() {
    FILE* pipe = popen(fmt::format("\"{}\" 1000", PRIOTSP_PROPERTIES).c_str(), "r");
    if (!pipe) return {false, "cannot run the property binary"};
    std::string text;
    char buf[512];
    while (std::fgets(buf, sizeof buf, pipe)) text += buf;
    const int status = pclose(pipe);
    std::stringstream in(text);
    std::string line;
    std::size_t passed = 0, total = 0, min_cases = static_cast<std::size_t>(-1);
    while (std::getline(in, line)) {
        const auto p = line.find("cases=");
        if (p == std::string::npos) continue;
        ++total;
        if (line.rfind("PASS", 0) == 0) ++passed;
        min_cases = std::min<std::size_t>(min_cases, std::stoul(line.substr(p + 6)));
    }
    const std::vector<std::string> required{"tracker-involution", "no-premature-cycle",
                                            "score-monotone-in-distance",
                                            "priority-order-scale-invariant", "length-rotation-reversal"};
    std::vector<std::string> absent;
    for (const auto& r : required) {
        if (text.find("PASS " + r + " ") == std::string::npos) absent.push_back(r);
    }
    const bool ok = status == 0 && total > 0 && passed == total && min_cases >= 1000 && absent.empty();
    std::string detail = fmt::format("{}/{} properties passed, at least {} cases each", passed, total,
                                     total ? min_cases : 0);
    if (!absent.empty()) detail += "; not passing: " + join_names(absent);
    return {ok, detail};
}

} // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, Verdict (*)()>> criteria{
        {"TSPLIB small-set regression (eil51 berlin52 eil76 kroA100 bier127, +-3%)", table_regression},
        {"att48 reproduction", att48_reproduction},
        {"aggregate TSPLIB quality", aggregate_quality},
        {"random 100-city testbed", random_testbed},
        {"oracle equivalence", oracle_equivalence},
        {"complexity scaling", complexity_scaling},
        {"bench determinism", determinism},
        {"property suites", properties},
    };
    std::vector<std::size_t> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::stoul(argv[i]));
    if (selected.empty()) {
        for (std::size_t k = 1; k <= criteria.size(); ++k) selected.push_back(k);
    }

    int failures = 0;
    for (std::size_t k : selected) {
        if (k < 1 || k > criteria.size()) {
            std::cerr << "unknown criterion " << k << "\n";
            return 2;
        }
        const auto& [name, fn] = criteria[k - 1];
        Verdict v;
        try {
            v = fn();
        } catch (const std::exception& e) {
            v = {false, std::string("error: ") + e.what()};
        }
        std::cout << fmt::format("{} criterion {}: {}: {}\n", v.pass ? "PASS" : "FAIL", k, name, v.detail)
                  << std::flush;
        if (!v.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
