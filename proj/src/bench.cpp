#include "priotsp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <map>
#include <tuple>

#include <fmt/format.h>

#include "priotsp/baselines.hpp"
#include "priotsp/error.hpp"

namespace priotsp {

std::string_view to_string(Method method) {
    switch (method) {
    case Method::Proposed:
        return "proposed";
    case Method::NearestNeighbor:
        return "nn";
    case Method::Greedy:
        return "greedy";
    case Method::ClarkeWright:
        return "cw";
    }
    return "unknown";
}

Method method_from_string(std::string_view name) {
    if (name == "proposed") return Method::Proposed;
    if (name == "nn") return Method::NearestNeighbor;
    if (name == "greedy") return Method::Greedy;
    if (name == "cw") return Method::ClarkeWright;
    throw ConfigError(fmt::format("unknown method '{}' (expected proposed, nn, greedy or cw)", name));
}

std::string_view to_string(ReferenceKind kind) {
    switch (kind) {
    case ReferenceKind::KnownOptimum:
        return "known-optimum";
    case ReferenceKind::ExactOptimum:
        return "exact-optimum";
    case ReferenceKind::HeldKarpBound:
        return "hk-bound";
    }
    return "unknown";
}

ReportFormat report_format_from_string(std::string_view name) {
    if (name == "csv") return ReportFormat::Csv;
    if (name == "md" || name == "markdown") return ReportFormat::Markdown;
    throw ConfigError(fmt::format("unknown report format '{}' (expected csv or md)", name));
}

double percent_error(double length, double reference) {
    if (!(reference > 0.0)) {
        throw ConfigError(fmt::format("percent_error: reference must be positive, got {}", reference));
    }
    return 100.0 * (length - reference) / reference;
}

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Loaded {
    Instance instance;
    bool generated = false;
    double setup_millis = 0.0;
};

struct Solved {
    Tour tour;
    std::optional<ExponentCombo> combo;
};

Solved solve(Method method, const DistanceMatrix& m, const RunConfig& config,
             std::span<const ExponentCombo> combos) {
    switch (method) {
    case Method::Proposed: {
        const auto stats = city_stats(m);
        auto result = grid_search(m, stats, combos, config.threads);
        return {std::move(result.best.tour), result.best.combo};
    }
    case Method::NearestNeighbor:
        return {config.nn_all_starts ? nearest_neighbor_all_starts(m) : nearest_neighbor(m, 0),
                std::nullopt};
    case Method::Greedy:
        return {greedy_edge(m), std::nullopt};
    case Method::ClarkeWright:
        return {clarke_wright(m), std::nullopt};
    }
    throw ConfigError("unknown method");
}

void bench_instance(const Loaded& loaded, const RunConfig& config,
                    std::span<const ExponentCombo> combos, std::vector<BenchRecord>& out) {
    const auto t_matrix = Clock::now();
    const DistanceMatrix m = build_distance_matrix(loaded.instance);
    const double setup = loaded.setup_millis + millis_since(t_matrix);
    const std::size_t n = m.size();
    const std::string& name = loaded.instance.name;

    std::vector<BenchRecord> local;
    double shortest = std::numeric_limits<double>::infinity();
    for (Method method : config.methods) {
        const auto t0 = Clock::now();
        Solved s = solve(method, m, config, combos);
        const double wall = millis_since(t0);

        const auto report = validate_tour(s.tour.order, n);
        if (!report.ok()) {
            throw LogicError(fmt::format("{} produced an invalid tour on {}: {}", to_string(method),
                                         name, report.describe()));
        }
        BenchRecord r;
        r.instance_name = name;
        r.n = n;
        r.method = method;
        r.combo = s.combo;
        r.tour_length = s.tour.length;
        r.wall_millis = wall;
        r.setup_millis = setup;
        shortest = std::min(shortest, s.tour.length);
        local.push_back(std::move(r));
    }

    double reference = 0.0;
    ReferenceKind kind = ReferenceKind::KnownOptimum;
    if (const auto known = config.optima ? config.optima->find(name) : std::nullopt) {
        reference = static_cast<double>(*known);
    } else if (n <= 12) {
        reference = exact_optimum(m).length;
        kind = ReferenceKind::ExactOptimum;
    } else if (loaded.generated || config.bound_fallback) {
        reference = held_karp_bound(m, shortest, config.ascent).bound;
        kind = ReferenceKind::HeldKarpBound;
    } else {
        throw ConfigError(fmt::format(
            "no known optimum for '{}' (add it to the optima fixture or enable the bound fallback)",
            name));
    }
    for (auto& r : local) {
        r.reference = reference;
        r.reference_kind = kind;
        r.pct_error = percent_error(r.tour_length, reference);
        out.push_back(std::move(r));
    }
}

} // namespace

std::vector<BenchRecord> run_benchmark(const RunConfig& config) {
    if (config.methods.empty()) throw ConfigError("run_benchmark: no methods selected");
    if (config.instance_files.empty() && config.inline_instances.empty() &&
        config.random.empty()) {
        throw ConfigError("run_benchmark: no instance source");
    }
    const auto combos = config.grid.combos();
    if (combos.empty()) throw ConfigError("run_benchmark: empty exponent grid");

    std::vector<BenchRecord> records;
    for (const auto& path : config.instance_files) {
        const auto t0 = Clock::now();
        Loaded l{read_tsplib_file(path), false, 0.0};
        if (l.instance.name.empty()) l.instance.name = path.stem().string();
        l.setup_millis = millis_since(t0);
        bench_instance(l, config, combos, records);
    }
    for (const auto& inst : config.inline_instances) {
        bench_instance(Loaded{inst, true, 0.0}, config, combos, records);
    }
    for (const auto& spec : config.random) {
        for (std::size_t k = 0; k < spec.count; ++k) {
            const auto t0 = Clock::now();
            Loaded l{generate_random_euclidean(spec.n, spec.first_seed + k, spec.box_side), true,
                     0.0};
            l.setup_millis = millis_since(t0);
            bench_instance(l, config, combos, records);
        }
    }
    std::stable_sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
        return std::tie(a.instance_name, a.method) < std::tie(b.instance_name, b.method);
    });
    return records;
}

namespace {

constexpr std::string_view kColumns[] = {"instance", "n",      "method",    "alpha",
                                         "beta",     "gamma",  "delta",     "epsilon",
                                         "length",   "reference", "reference_kind",
                                         "pct_error", "wall_millis"};

std::vector<std::string> record_cells(const BenchRecord& r) {
    std::vector<std::string> c;
    c.reserve(std::size(kColumns));
    c.push_back(r.instance_name);
    c.push_back(std::to_string(r.n));
    c.emplace_back(to_string(r.method));
    if (r.combo) {
        for (double e : {r.combo->alpha, r.combo->beta, r.combo->gamma, r.combo->delta,
                         r.combo->epsilon}) {
            c.push_back(fmt::format("{:g}", e));
        }
    } else {
        c.insert(c.end(), 5, "");
    }
    c.push_back(fmt::format("{:.2f}", r.tour_length));
    c.push_back(fmt::format("{:.2f}", r.reference));
    c.emplace_back(to_string(r.reference_kind));
    c.push_back(fmt::format("{:.2f}", r.pct_error));
    c.push_back(fmt::format("{:.3f}", r.wall_millis));
    return c;
}

std::vector<std::vector<std::string>> mean_rows(std::span<const BenchRecord> records) {
    // Groups keep first-appearance order of (method, reference kind).
    std::vector<std::pair<Method, ReferenceKind>> keys;
    std::map<std::pair<Method, ReferenceKind>, std::pair<double, std::size_t>> acc;
    for (const auto& r : records) {
        const auto key = std::make_pair(r.method, r.reference_kind);
        auto [it, inserted] = acc.try_emplace(key, 0.0, 0);
        if (inserted) keys.push_back(key);
        it->second.first += r.pct_error;
        ++it->second.second;
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& key : keys) {
        const auto& [sum, count] = acc.at(key);
        std::vector<std::string> row(std::size(kColumns));
        row[0] = "mean";
        row[2] = std::string(to_string(key.first));
        row[10] = std::string(to_string(key.second));
        row[11] = fmt::format("{:.2f}", sum / static_cast<double>(count));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string join(const std::vector<std::string>& cells, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += sep;
        out += cells[i];
    }
    return out;
}

} // namespace

std::string render_report(std::span<const BenchRecord> records, ReportFormat format,
                          bool with_means) {
    if (records.empty()) throw ConfigError("render_report: no records");
    std::vector<std::vector<std::string>> rows;
    rows.reserve(records.size() + 4);
    for (const auto& r : records) rows.push_back(record_cells(r));
    if (with_means) {
        for (auto& row : mean_rows(records)) rows.push_back(std::move(row));
    }
    const std::vector<std::string> header(std::begin(kColumns), std::end(kColumns));

    std::string out;
    if (format == ReportFormat::Csv) {
        out += join(header, ",") + "\n";
        for (const auto& row : rows) out += join(row, ",") + "\n";
        return out;
    }

    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        width[c] = std::max<std::size_t>(3, header[c].size());
        for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
    }
    auto line = [&](const std::vector<std::string>& cells) {
        std::string s = "|";
        for (std::size_t c = 0; c < cells.size(); ++c) {
            s += fmt::format(" {:<{}} |", cells[c], width[c]);
        }
        return s + "\n";
    };
    out += line(header);
    std::string sep = "|";
    for (std::size_t c = 0; c < header.size(); ++c) sep += std::string(width[c] + 2, '-') + "|";
    out += sep + "\n";
    for (const auto& row : rows) out += line(row);
    return out;
}

} // namespace priotsp
