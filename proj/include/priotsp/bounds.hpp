#pragma once

/// @file bounds.hpp
/// @brief Reference values: exact optimum for small n and the Held-Karp
/// 1-tree lower bound obtained by subgradient ascent.

#include <cstddef>
#include <span>
#include <vector>

#include "priotsp/instance.hpp"

namespace priotsp {

/// Largest n accepted by exact_optimum.
inline constexpr std::size_t kExactMaxCities = 15;

/// Optimal tour by subset dynamic programming, O(2^n n^2). Among optimal
/// tours returns the lexicographically smallest order starting at city 0.
/// Throws SizeLimitError for n > kExactMaxCities.
Tour exact_optimum(const DistanceMatrix& matrix);

struct OneTree {
    double value = 0.0;              ///< tree weight under d + pi_i + pi_j, minus 2 * sum(pi)
    std::vector<unsigned> degree;    ///< degree of each city in the 1-tree
};

/// Minimum 1-tree on potentials `pi`: a minimum spanning tree over cities
/// 1..n-1 (dense Prim, O(n^2)) plus the two cheapest edges at city 0.
OneTree one_tree(const DistanceMatrix& matrix, std::span<const double> pi);

/// one_tree(matrix, pi).value; a lower bound on every tour for any pi.
double one_tree_value(const DistanceMatrix& matrix, std::span<const double> pi);

struct LowerBoundResult {
    double bound = 0.0;
    std::size_t iterations_used = 0;
    std::vector<double> potentials; ///< pi at the best bound
};

struct AscentOptions {
    std::size_t max_iters = 1000;
    double initial_lambda = 2.0;
    std::size_t patience = 10;   ///< non-improving iterations before lambda halves
    double min_lambda = 1e-6;
};

/// Held-Karp bound by subgradient ascent on the node potentials:
///   pi_i += t_k * (deg_i - 2),
///   t_k = lambda_k * (upper_bound_hint - L(pi_k)) / sum_i (deg_i - 2)^2.
/// lambda starts at 2 and halves after `patience` consecutive iterations
/// without a new best. Stops when max_iters 1-trees have been evaluated, the
/// 1-tree is a tour, or lambda drops below min_lambda. Returns the best value
/// seen, so the result never decreases with more iterations.
/// Throws ConfigError when max_iters == 0.
LowerBoundResult held_karp_bound(const DistanceMatrix& matrix, double upper_bound_hint,
                                 const AscentOptions& options = {});

} // namespace priotsp
