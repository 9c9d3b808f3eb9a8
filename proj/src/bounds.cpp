#include "priotsp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "priotsp/error.hpp"

namespace priotsp {

Tour exact_optimum(const DistanceMatrix& matrix) {
    const std::size_t n = matrix.size();
    if (n < 3) {
        throw DegenerateInstanceError("exact_optimum: need at least 3 cities, got " +
                                      std::to_string(n));
    }
    if (n > kExactMaxCities) {
        throw SizeLimitError("exact_optimum: n = " + std::to_string(n) + " exceeds the limit of " +
                             std::to_string(kExactMaxCities));
    }

    // Subsets range over cities 1..n-1; city k is bit k-1. g[S * n + j] is the
    // shortest path that starts at j (not in S), visits all of S, and ends at 0.
    const std::size_t m = n - 1;
    const std::size_t full = (std::size_t{1} << m) - 1;
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> g((full + 1) * n, inf);
    for (std::size_t j = 1; j < n; ++j) g[j] = matrix(j, 0);
    for (std::size_t s = 1; s <= full; ++s) {
        for (std::size_t j = 1; j < n; ++j) {
            if (s & (std::size_t{1} << (j - 1))) continue;
            double best = inf;
            for (std::size_t k = 1; k < n; ++k) {
                const std::size_t bit = std::size_t{1} << (k - 1);
                if (!(s & bit)) continue;
                best = std::min(best, matrix(j, k) + g[(s ^ bit) * n + k]);
            }
            g[s * n + j] = best;
        }
    }

    double opt = inf;
    for (std::size_t k = 1; k < n; ++k) {
        const std::size_t bit = std::size_t{1} << (k - 1);
        opt = std::min(opt, matrix(0, k) + g[(full ^ bit) * n + k]);
    }

    // Forward reconstruction, always taking the smallest feasible next city.
    const double tol = 1e-9 * std::max(1.0, opt);
    std::vector<std::size_t> order{0};
    std::size_t cur = 0;
    std::size_t rest = full;
    double remaining = opt;
    while (rest != 0) {
        bool advanced = false;
        for (std::size_t k = 1; k < n; ++k) {
            const std::size_t bit = std::size_t{1} << (k - 1);
            if (!(rest & bit)) continue;
            const double tail = g[(rest ^ bit) * n + k];
            if (std::abs(matrix(cur, k) + tail - remaining) <= tol) {
                order.push_back(k);
                rest ^= bit;
                remaining = tail;
                cur = k;
                advanced = true;
                break;
            }
        }
        if (!advanced) throw LogicError("exact_optimum: reconstruction failed");
    }
    return make_tour(std::move(order), matrix);
}

OneTree one_tree(const DistanceMatrix& matrix, std::span<const double> pi) {
    const std::size_t n = matrix.size();
    if (n < 3) {
        throw DegenerateInstanceError("one_tree: need at least 3 cities, got " +
                                      std::to_string(n));
    }
    if (pi.size() != n) throw ConfigError("one_tree: potentials size does not match the matrix");
    auto w = [&](std::size_t i, std::size_t j) { return matrix(i, j) + pi[i] + pi[j]; };

    OneTree tree;
    tree.degree.assign(n, 0);
    constexpr double inf = std::numeric_limits<double>::infinity();
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();

    // Dense Prim over cities 1..n-1, rooted at city 1.
    std::vector<double> key(n, inf);
    std::vector<std::size_t> parent(n, none);
    std::vector<bool> in_tree(n, false);
    in_tree[0] = true;
    key[1] = 0.0;
    double total = 0.0;
    for (std::size_t added = 0; added < n - 1; ++added) {
        std::size_t u = none;
        for (std::size_t v = 1; v < n; ++v) {
            if (!in_tree[v] && (u == none || key[v] < key[u])) u = v;
        }
        in_tree[u] = true;
        if (parent[u] != none) {
            total += key[u];
            ++tree.degree[u];
            ++tree.degree[parent[u]];
        }
        for (std::size_t v = 1; v < n; ++v) {
            if (in_tree[v]) continue;
            const double c = w(u, v);
            if (c < key[v]) {
                key[v] = c;
                parent[v] = u;
            }
        }
    }

    // Two cheapest edges at city 0 (ties: lower index).
    std::size_t first = none, second = none;
    for (std::size_t v = 1; v < n; ++v) {
        if (first == none || w(0, v) < w(0, first)) {
            second = first;
            first = v;
        } else if (second == none || w(0, v) < w(0, second)) {
            second = v;
        }
    }
    total += w(0, first) + w(0, second);
    tree.degree[0] = 2;
    ++tree.degree[first];
    ++tree.degree[second];

    tree.value = total - 2.0 * std::accumulate(pi.begin(), pi.end(), 0.0);
    return tree;
}

double one_tree_value(const DistanceMatrix& matrix, std::span<const double> pi) {
    return one_tree(matrix, pi).value;
}

LowerBoundResult held_karp_bound(const DistanceMatrix& matrix, double upper_bound_hint,
                                 const AscentOptions& options) {
    if (options.max_iters == 0) throw ConfigError("held_karp_bound: max_iters must be positive");
    if (!std::isfinite(upper_bound_hint)) {
        throw ConfigError("held_karp_bound: upper bound hint must be finite");
    }
    const std::size_t n = matrix.size();
    std::vector<double> pi(n, 0.0);
    LowerBoundResult result;
    result.bound = -std::numeric_limits<double>::infinity();
    result.potentials = pi;

    double lambda = options.initial_lambda;
    std::size_t stale = 0;
    for (std::size_t it = 0; it < options.max_iters; ++it) {
        const OneTree tree = one_tree(matrix, pi);
        result.iterations_used = it + 1;
        if (tree.value > result.bound) {
            result.bound = tree.value;
            result.potentials = pi;
            stale = 0;
        } else if (++stale >= options.patience) {
            lambda *= 0.5;
            stale = 0;
            if (lambda < options.min_lambda) break;
        }

        double norm = 0.0;
        for (unsigned d : tree.degree) {
            const double g = static_cast<double>(d) - 2.0;
            norm += g * g;
        }
        if (norm == 0.0) break; // the 1-tree is a tour, hence optimal
        const double gap = upper_bound_hint - tree.value;
        if (gap <= 0.0) break;
        const double step = lambda * gap / norm;
        for (std::size_t i = 0; i < n; ++i) {
            pi[i] += step * (static_cast<double>(tree.degree[i]) - 2.0);
        }
    }
    return result;
}

} // namespace priotsp
