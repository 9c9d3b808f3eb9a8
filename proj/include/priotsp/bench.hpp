#pragma once

/// @file bench.hpp
/// @brief Benchmark harness: runs heuristics over instance sets, computes
/// percent errors against known optima or lower bounds, and renders reports
/// and SVG tour plots.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "priotsp/bounds.hpp"
#include "priotsp/instance.hpp"
#include "priotsp/priority.hpp"
#include "priotsp/tsplib.hpp"

namespace priotsp {

enum class Method { Proposed, NearestNeighbor, Greedy, ClarkeWright };

std::string_view to_string(Method method);
/// Accepts proposed | nn | greedy | cw. Throws ConfigError otherwise.
Method method_from_string(std::string_view name);

enum class ReferenceKind { KnownOptimum, ExactOptimum, HeldKarpBound };

std::string_view to_string(ReferenceKind kind);

enum class ReportFormat { Csv, Markdown };

/// Accepts csv | md | markdown. Throws ConfigError otherwise.
ReportFormat report_format_from_string(std::string_view name);

/// 100 * (length - reference) / reference. Throws ConfigError if reference <= 0.
double percent_error(double length, double reference);

struct BenchRecord {
    std::string instance_name;
    std::size_t n = 0;
    Method method = Method::Proposed;
    std::optional<ExponentCombo> combo; ///< set for Method::Proposed
    double tour_length = 0.0;
    double reference = 0.0;
    ReferenceKind reference_kind = ReferenceKind::KnownOptimum;
    double pct_error = 0.0;
    double wall_millis = 0.0;  ///< solve time only
    double setup_millis = 0.0; ///< parse/generate + distance matrix, per instance
};

/// Instances generated as generate_random_euclidean(n, first_seed + k, box), k < count.
struct RandomSpec {
    std::size_t n = 100;
    std::size_t count = 15;
    std::uint64_t first_seed = 1;
    double box_side = 1e6;
};

struct RunConfig {
    std::vector<std::filesystem::path> instance_files;
    std::vector<Instance> inline_instances;
    std::vector<RandomSpec> random;
    std::optional<OptimaTable> optima;
    std::vector<Method> methods{Method::Proposed};
    ExponentGrid grid = ExponentGrid::standard();
    AscentOptions ascent;
    /// Use the Held-Karp bound for file instances missing from the optima table.
    bool bound_fallback = false;
    /// Nearest neighbor from every start city instead of city 0.
    bool nn_all_starts = false;
    unsigned threads = 1;
};

/// Reference policy, per instance:
///   1. name present in the optima table -> known optimum;
///   2. n <= 12 -> exact optimum;
///   3. generated/inline instance, or bound_fallback -> Held-Karp bound, with
///      the shortest tour found on that instance as the ascent's upper bound;
///   4. otherwise ConfigError.
/// Every tour is validated before its record is emitted. Records are sorted by
/// (instance name, method).
std::vector<BenchRecord> run_benchmark(const RunConfig& config);

/// CSV (header `instance,n,method,alpha,beta,gamma,delta,epsilon,length,
/// reference,reference_kind,pct_error,wall_millis`) or a markdown table with
/// the same cells. With `with_means`, one `mean` row per (method,
/// reference kind) group follows the records.
std::string render_report(std::span<const BenchRecord> records, ReportFormat format,
                          bool with_means = true);

/// Static SVG 1.1 plot: one circle per city, the tour as a solid closed path
/// and the optional reference tour as a dashed closed path. Throws
/// UnsupportedError for EXPLICIT instances.
std::string plot_tour_svg(const Instance& instance, std::span<const std::size_t> tour,
                          std::optional<std::span<const std::size_t>> reference = std::nullopt);

} // namespace priotsp
