#include "priotsp/baselines.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <tuple>

#include "priotsp/error.hpp"
#include "priotsp/priority.hpp"

namespace priotsp {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void require_tour_size(const DistanceMatrix& m, const char* who) {
    if (m.size() < 3) {
        throw DegenerateInstanceError(std::string(who) + ": need at least 3 cities, got " +
                                      std::to_string(m.size()));
    }
}

/// Walks a degree-2 edge set into an order starting at city 0 towards its
/// lower-indexed neighbor.
std::vector<std::size_t> walk_cycle(std::size_t n, const std::vector<Edge>& edges) {
    std::vector<std::array<std::size_t, 2>> adj(n, {kNone, kNone});
    for (const auto& [a, b] : edges) {
        adj[a][adj[a][0] == kNone ? 0 : 1] = b;
        adj[b][adj[b][0] == kNone ? 0 : 1] = a;
    }
    std::vector<std::size_t> order{0};
    std::size_t prev = 0;
    std::size_t cur = std::min(adj[0][0], adj[0][1]);
    while (cur != 0 && cur != kNone && order.size() <= n) {
        order.push_back(cur);
        const std::size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = next;
    }
    if (order.size() != n) throw LogicError("edge set is not a single Hamiltonian cycle");
    return order;
}

} // namespace

Tour nearest_neighbor(const DistanceMatrix& matrix, std::size_t start) {
    require_tour_size(matrix, "nearest_neighbor");
    const std::size_t n = matrix.size();
    if (start >= n) {
        throw ConfigError("nearest_neighbor: start city " + std::to_string(start) +
                          " out of range");
    }
    std::vector<bool> visited(n, false);
    std::vector<std::size_t> order;
    order.reserve(n);
    std::size_t cur = start;
    visited[cur] = true;
    order.push_back(cur);
    for (std::size_t step = 1; step < n; ++step) {
        const auto row = matrix.row(cur);
        std::size_t best = kNone;
        for (std::size_t j = 0; j < n; ++j) {
            if (visited[j]) continue;
            if (best == kNone || row[j] < row[best]) best = j;
        }
        visited[best] = true;
        order.push_back(best);
        cur = best;
    }
    return make_tour(std::move(order), matrix);
}

Tour nearest_neighbor_all_starts(const DistanceMatrix& matrix) {
    require_tour_size(matrix, "nearest_neighbor_all_starts");
    Tour best = nearest_neighbor(matrix, 0);
    for (std::size_t s = 1; s < matrix.size(); ++s) {
        Tour t = nearest_neighbor(matrix, s);
        if (t.length < best.length) best = std::move(t);
    }
    return best;
}

Tour greedy_edge(const DistanceMatrix& matrix) {
    require_tour_size(matrix, "greedy_edge");
    const std::size_t n = matrix.size();
    struct Candidate {
        double d;
        std::size_t i, j;
    };
    std::vector<Candidate> cand;
    cand.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) cand.push_back({matrix(i, j), i, j});
    std::sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) {
        return std::tie(a.d, a.i, a.j) < std::tie(b.d, b.i, b.j);
    });

    PathEndTracker tracker(n);
    std::vector<Edge> edges;
    edges.reserve(n);
    for (const auto& c : cand) {
        if (tracker.edges() == n) break;
        if (tracker.degree(c.i) < 2 && tracker.can_connect(c.i, c.j)) {
            tracker.connect(c.i, c.j);
            edges.emplace_back(c.i, c.j);
        }
    }
    if (tracker.edges() != n) throw LogicError("greedy_edge: edge list exhausted before closing");
    return make_tour(walk_cycle(n, edges), matrix);
}

std::size_t default_savings_hub(const CityStats& stats) {
    if (stats.mu.empty()) throw DegenerateInstanceError("default_savings_hub: no cities");
    return static_cast<std::size_t>(
        std::max_element(stats.mu.begin(), stats.mu.end()) - stats.mu.begin());
}

Tour clarke_wright(const DistanceMatrix& matrix, std::optional<std::size_t> hub) {
    require_tour_size(matrix, "clarke_wright");
    const std::size_t n = matrix.size();
    const std::size_t h = hub ? *hub : default_savings_hub(city_stats(matrix));
    if (h >= n) throw ConfigError("clarke_wright: hub " + std::to_string(h) + " out of range");
    if (n == 3) {
        return make_tour({0, 1, 2}, matrix);
    }

    struct Saving {
        double s;
        std::size_t i, j;
    };
    std::vector<Saving> savings;
    savings.reserve((n - 1) * (n - 2) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == h) continue;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == h) continue;
            savings.push_back({matrix(h, i) + matrix(h, j) - matrix(i, j), i, j});
        }
    }
    std::sort(savings.begin(), savings.end(), [](const Saving& a, const Saving& b) {
        if (a.s != b.s) return a.s > b.s;
        return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    });

    // The hub stays a singleton in the tracker, so the closing-edge exception
    // (E == n - 1) never fires while the n - 2 path edges are placed.
    PathEndTracker tracker(n);
    std::vector<Edge> edges;
    edges.reserve(n);
    const std::size_t path_edges = n - 2;
    for (const auto& sv : savings) {
        if (tracker.edges() == path_edges) break;
        if (tracker.degree(sv.i) < 2 && tracker.can_connect(sv.i, sv.j)) {
            tracker.connect(sv.i, sv.j);
            edges.emplace_back(sv.i, sv.j);
        }
    }
    if (tracker.edges() != path_edges) throw LogicError("clarke_wright: savings list exhausted");

    std::array<std::size_t, 2> ends{kNone, kNone};
    for (std::size_t c = 0; c < n; ++c) {
        if (c != h && tracker.degree(c) == 1) ends[ends[0] == kNone ? 0 : 1] = c;
    }
    if (ends[1] == kNone) throw LogicError("clarke_wright: path has no two ends");
    edges.emplace_back(h, ends[0]);
    edges.emplace_back(h, ends[1]);
    return make_tour(walk_cycle(n, edges), matrix);
}

} // namespace priotsp
