#pragma once

/// @file baselines.hpp
/// @brief Classic construction heuristics used as comparison baselines.

#include <cstddef>
#include <optional>

#include "priotsp/instance.hpp"

namespace priotsp {

/// Greedy walk from `start` to the nearest unvisited city (ties: lower
/// index), closed back to `start`. O(n^2).
Tour nearest_neighbor(const DistanceMatrix& matrix, std::size_t start = 0);

/// Best nearest-neighbor tour over all start cities (ties: lower start). O(n^3).
Tour nearest_neighbor_all_starts(const DistanceMatrix& matrix);

/// Greedy edge matching: all edges in ascending length (ties: lexicographic
/// endpoint pair), each accepted when both endpoints have degree < 2 and it
/// does not close a premature cycle. O(n^2 log n).
Tour greedy_edge(const DistanceMatrix& matrix);

/// Default savings hub: the city with the largest mean distance (ties: lower index).
std::size_t default_savings_hub(const CityStats& stats);

/// Clarke-Wright savings. Non-hub pairs are merged in descending order of
/// s(i, j) = d(h, i) + d(h, j) - d(i, j) (ties: lexicographic pair) into a
/// single Hamiltonian path whose two ends are then joined through the hub.
/// Without a hub argument default_savings_hub() is used. O(n^2 log n).
Tour clarke_wright(const DistanceMatrix& matrix, std::optional<std::size_t> hub = std::nullopt);

} // namespace priotsp
