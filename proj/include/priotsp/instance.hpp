#pragma once

/// @file instance.hpp
/// @brief Problem representation: instances, TSPLIB distance rules, the dense
/// distance matrix, per-city distance statistics and tours.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace priotsp {

enum class DistanceKind { Euc2D, Att, Ceil2D, Explicit };

std::string_view to_string(DistanceKind kind);

/// Maps a TSPLIB EDGE_WEIGHT_TYPE keyword to a kind; nullopt for unsupported types.
std::optional<DistanceKind> distance_kind_from_string(std::string_view name);

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Immutable problem statement. Either coords (geometric kinds) or
/// explicit_weights (row-major n*n, EXPLICIT only) is populated.
struct Instance {
    std::string name;
    DistanceKind kind = DistanceKind::Euc2D;
    std::vector<Point> coords;
    std::vector<double> explicit_weights;

    std::size_t size() const;
    bool has_coordinates() const { return kind != DistanceKind::Explicit; }
};

/// TSPLIB distance between two coordinates.
///
/// EUC_2D rounds the Euclidean distance to the nearest integer, CEIL_2D rounds
/// it up, and ATT is the pseudo-Euclidean rule
/// r = sqrt((dx^2 + dy^2) / 10), t = nint(r), result = t < r ? t + 1 : t.
/// Throws ConfigError for DistanceKind::Explicit.
double distance(DistanceKind kind, Point a, Point b);

/// Symmetric n x n matrix with zero diagonal, stored row-major.
class DistanceMatrix {
  public:
    DistanceMatrix() = default;

    /// Takes ownership of a row-major n*n table and validates it.
    /// Throws ValidationError on asymmetry, non-zero diagonal, negative or
    /// non-finite entries.
    DistanceMatrix(std::size_t n, std::vector<double> values);

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return d_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const noexcept {
        return {d_.data() + i * n_, n_};
    }
    std::span<const double> values() const noexcept { return d_; }

  private:
    std::size_t n_ = 0;
    std::vector<double> d_;
};

DistanceMatrix build_distance_matrix(const Instance& instance);

/// Mean and population standard deviation of each city's distances to the
/// other n-1 cities.
struct CityStats {
    std::vector<double> mu;
    std::vector<double> sigma;

    std::size_t size() const noexcept { return mu.size(); }
};

/// Throws DegenerateInstanceError when n < 2.
CityStats city_stats(const DistanceMatrix& matrix);

struct Tour {
    std::vector<std::size_t> order;
    double length = 0.0;
};

/// Result of a permutation check. ok() iff every list is empty.
struct TourReport {
    std::vector<std::size_t> duplicates;
    std::vector<std::size_t> missing;
    std::vector<std::size_t> out_of_range;

    bool ok() const noexcept {
        return duplicates.empty() && missing.empty() && out_of_range.empty();
    }
    std::string describe() const;
};

TourReport validate_tour(std::span<const std::size_t> order, std::size_t n);

/// Closed-cycle length. Throws ValidationError unless order is a permutation
/// of {0, ..., n-1}.
double tour_length(std::span<const std::size_t> order, const DistanceMatrix& matrix);

/// Builds a Tour with its length filled in.
Tour make_tour(std::vector<std::size_t> order, const DistanceMatrix& matrix);

/// Uniform random points in [0, box_side]^2, kind EUC_2D.
///
/// Generator: std::mt19937_64 seeded with `seed`. Each coordinate consumes one
/// 64-bit draw u and is (u >> 11) * 2^-53 * box_side; points are drawn in order
/// x0, y0, x1, y1, ... The engine's output sequence is fixed by the C++
/// standard, so coordinates are identical on every platform.
Instance generate_random_euclidean(std::size_t n, std::uint64_t seed, double box_side);

} // namespace priotsp
