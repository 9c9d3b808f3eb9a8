#pragma once

/// @file priority.hpp
/// @brief Two-step priority-driven tour construction with exponent grid search.
///
/// Cities are ranked by a power function of the mean and standard deviation
/// of their distances (city_priority). In ranked order, each city that still
/// needs an edge is joined to the available neighbor with the highest
/// neighbor_score, a power function of the neighbor's statistics divided by a
/// power of the distance. Main step 1 gives every city at least one edge and
/// main step 2 raises every degree to two, closing a single Hamiltonian cycle.
/// Subcycles are prevented in O(1) per query with PathEndTracker.
///
/// Tie-breaking:
///   - equal city priorities: lower city index first;
///   - equal neighbor scores: lower neighbor index wins;
///   - equal grid lengths: earlier combo in lexicographic (alpha, beta, gamma,
///     delta, epsilon) order over ascending value lists.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "priotsp/instance.hpp"

namespace priotsp {

/// One point of the exponent grid.
struct ExponentCombo {
    double alpha = 0.0;   ///< city priority: exponent of mu
    double beta = 0.0;    ///< city priority: exponent of sigma
    double gamma = 0.0;   ///< neighbor score: exponent of the distance (divisor)
    double delta = 0.0;   ///< neighbor score: exponent of the neighbor's mu
    double epsilon = 0.0; ///< neighbor score: exponent of the neighbor's sigma

    friend bool operator==(const ExponentCombo&, const ExponentCombo&) = default;
};

std::string to_string(const ExponentCombo& combo);

/// base^exponent with 0^0 = 1, so a zero exponent always removes its factor.
double power(double base, double exponent);

/// mu^alpha * sigma^beta.
double city_priority(double mu, double sigma, double alpha, double beta);

/// (mu^delta * sigma^epsilon) / d^gamma. A zero distance with gamma > 0 scores
/// +infinity so coincident cities are joined first.
double neighbor_score(double mu, double sigma, double d, double gamma, double delta,
                      double epsilon);

/// Degrees, edge count and opposite path endpoints of a partial tour.
///
/// For every city x of degree < 2, other_end(x) is the far endpoint of the
/// path fragment containing x (x itself for a singleton) and
/// other_end(other_end(x)) == x.
class PathEndTracker {
  public:
    explicit PathEndTracker(std::size_t n);

    std::size_t size() const noexcept { return other_end_.size(); }
    std::size_t other_end(std::size_t city) const { return other_end_[city]; }
    unsigned degree(std::size_t city) const { return degree_[city]; }
    std::size_t edges() const noexcept { return edges_; }

    /// True iff neighbor still has a free slot and the edge would not close a
    /// cycle, unless it is the final (n-th) edge.
    bool can_connect(std::size_t city, std::size_t neighbor) const {
        return degree_[neighbor] < 2 &&
               (other_end_[city] != neighbor || edges_ + 1 == other_end_.size());
    }

    /// Adds edge city-neighbor and relinks the two outer endpoints.
    /// Throws LogicError if the precondition does not hold.
    void connect(std::size_t city, std::size_t neighbor);

  private:
    std::vector<std::size_t> other_end_;
    std::vector<unsigned> degree_;
    std::size_t edges_ = 0;
};

using Edge = std::pair<std::size_t, std::size_t>;

struct ConstructionResult {
    Tour tour;
    ExponentCombo combo;
    std::vector<Edge> step1_edges;
    std::vector<Edge> step2_edges;
    /// Candidate neighbors scored across both steps.
    std::uint64_t neighbor_evaluations = 0;
};

/// Throws ConfigError if an exponent is non-finite, or negative while the
/// corresponding statistic is zero for some city.
void validate_combo(const ExponentCombo& combo, const CityStats& stats);

/// Runs main step `step` (1 or 2) in place. Returns the number of neighbor
/// evaluations performed. Throws LogicError if a city that must connect has
/// no admissible neighbor (unreachable for n >= 3).
std::uint64_t run_main_step(int step, const DistanceMatrix& matrix, const CityStats& stats,
                            const ExponentCombo& combo, PathEndTracker& tracker,
                            std::vector<Edge>& edges);

/// Both main steps on a fresh tracker, then the cycle is walked from city 0
/// towards its lower-indexed neighbor. Throws DegenerateInstanceError for n < 3.
ConstructionResult construct_tour(const DistanceMatrix& matrix, const CityStats& stats,
                                  const ExponentCombo& combo);

/// Per-exponent candidate value lists. combos() enumerates the Cartesian
/// product in lexicographic order with each list sorted ascending.
struct ExponentGrid {
    std::vector<double> alpha;
    std::vector<double> beta;
    std::vector<double> gamma;
    std::vector<double> delta;
    std::vector<double> epsilon;

    /// Same value list for all five exponents.
    static ExponentGrid uniform(std::vector<double> values);
    /// {0, 0.5, 1} for every exponent (243 combos).
    static ExponentGrid standard();

    std::vector<ExponentCombo> combos() const;
};

struct GridSearchResult {
    ConstructionResult best;
    std::vector<ExponentCombo> combos;
    std::vector<double> lengths; ///< lengths[k] belongs to combos[k]
};

/// Minimum-length construction over `grid`. Combos may be evaluated on
/// `threads` workers; the selection is an ordered fold, so the result does
/// not depend on the thread count. Throws ConfigError for an empty grid.
GridSearchResult grid_search(const DistanceMatrix& matrix, const CityStats& stats,
                             std::span<const ExponentCombo> grid, unsigned threads = 1);

} // namespace priotsp
