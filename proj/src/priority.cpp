#include "priotsp/priority.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <numeric>
#include <thread>

#include <fmt/format.h>

#include "priotsp/error.hpp"

namespace priotsp {

std::string to_string(const ExponentCombo& c) {
    return fmt::format("({:g}, {:g}, {:g}, {:g}, {:g})", c.alpha, c.beta, c.gamma, c.delta,
                       c.epsilon);
}

double power(double base, double exponent) {
    if (exponent == 0.0) return 1.0;
    if (exponent == 1.0) return base;
    if (exponent == 0.5) return std::sqrt(base);
    return std::pow(base, exponent);
}

double city_priority(double mu, double sigma, double alpha, double beta) {
    return power(mu, alpha) * power(sigma, beta);
}

namespace {

constexpr double kMaxScore = std::numeric_limits<double>::infinity();
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Single definition of the score given a precomputed numerator and d^gamma, so
// the table-driven inner loop and neighbor_score() agree bit for bit.
inline double score(double numerator, double d, double d_pow, double gamma) {
    if (d == 0.0 && gamma > 0.0) return kMaxScore;
    return numerator / d_pow;
}

} // namespace

double neighbor_score(double mu, double sigma, double d, double gamma, double delta,
                      double epsilon) {
    const double numerator = power(mu, delta) * power(sigma, epsilon);
    return score(numerator, d, power(d, gamma), gamma);
}

PathEndTracker::PathEndTracker(std::size_t n) : other_end_(n), degree_(n, 0) {
    std::iota(other_end_.begin(), other_end_.end(), std::size_t{0});
}

void PathEndTracker::connect(std::size_t city, std::size_t neighbor) {
    if (city == neighbor || city >= size() || neighbor >= size() || degree_[city] >= 2 ||
        !can_connect(city, neighbor)) {
        throw LogicError(fmt::format("PathEndTracker::connect({}, {}) violates its precondition",
                                     city, neighbor));
    }
    // Read both far ends before writing either.
    const std::size_t a = other_end_[city];
    const std::size_t b = other_end_[neighbor];
    other_end_[a] = b;
    other_end_[b] = a;
    ++degree_[city];
    ++degree_[neighbor];
    ++edges_;
}

void validate_combo(const ExponentCombo& c, const CityStats& stats) {
    const double all[] = {c.alpha, c.beta, c.gamma, c.delta, c.epsilon};
    for (double e : all) {
        if (!std::isfinite(e)) throw ConfigError("exponent combo " + to_string(c) + " is not finite");
    }
    auto has_zero = [](const std::vector<double>& v) {
        return std::any_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
    };
    const bool zero_mu = has_zero(stats.mu);
    const bool zero_sigma = has_zero(stats.sigma);
    if ((c.alpha < 0.0 || c.delta < 0.0) && zero_mu) {
        throw ConfigError("exponent combo " + to_string(c) +
                          ": negative mu exponent with a zero mean distance");
    }
    if ((c.beta < 0.0 || c.epsilon < 0.0) && zero_sigma) {
        throw ConfigError("exponent combo " + to_string(c) +
                          ": negative sigma exponent with a zero standard deviation");
    }
}

namespace {

/// d^gamma for every pair, row-major.
std::vector<double> powered_distances(const DistanceMatrix& m, double gamma) {
    const auto src = m.values();
    std::vector<double> out(src.size());
    std::transform(src.begin(), src.end(), out.begin(),
                   [gamma](double d) { return power(d, gamma); });
    return out;
}

std::uint64_t main_step(int step, const DistanceMatrix& m, const CityStats& stats,
                        const ExponentCombo& c, std::span<const double> d_pow,
                        PathEndTracker& tracker, std::vector<Edge>& edges) {
    const std::size_t n = m.size();

    // ListOne: every city with a free slot, ranked by city priority.
    std::vector<std::size_t> ranked;
    std::vector<double> priority(n, 0.0);
    for (std::size_t city = 0; city < n; ++city) {
        if (tracker.degree(city) < 2) {
            priority[city] = city_priority(stats.mu[city], stats.sigma[city], c.alpha, c.beta);
            ranked.push_back(city);
        }
    }
    std::stable_sort(ranked.begin(), ranked.end(), [&priority](std::size_t a, std::size_t b) {
        return priority[a] > priority[b];
    });

    std::vector<double> numerator(n);
    for (std::size_t j = 0; j < n; ++j) {
        numerator[j] = power(stats.mu[j], c.delta) * power(stats.sigma[j], c.epsilon);
    }

    std::uint64_t evaluations = 0;
    for (std::size_t city : ranked) {
        if (tracker.degree(city) >= static_cast<unsigned>(step)) continue;
        const auto row = m.row(city);
        const double* prow = d_pow.data() + city * n;
        std::size_t best = kNone;
        double best_score = 0.0;
        for (std::size_t nb = 0; nb < n; ++nb) {
            if (nb == city) continue;
            ++evaluations;
            if (!tracker.can_connect(city, nb)) continue;
            const double s = score(numerator[nb], row[nb], prow[nb], c.gamma);
            if (best == kNone || s > best_score) {
                best = nb;
                best_score = s;
            }
        }
        if (best == kNone) {
            throw LogicError(fmt::format("main step {}: city {} has no admissible neighbor", step,
                                         city));
        }
        tracker.connect(city, best);
        edges.emplace_back(city, best);
    }
    return evaluations;
}

ConstructionResult construct_with(const DistanceMatrix& m, const CityStats& stats,
                                  const ExponentCombo& c, std::span<const double> d_pow) {
    const std::size_t n = m.size();
    PathEndTracker tracker(n);
    ConstructionResult result;
    result.combo = c;
    result.neighbor_evaluations += main_step(1, m, stats, c, d_pow, tracker, result.step1_edges);
    result.neighbor_evaluations += main_step(2, m, stats, c, d_pow, tracker, result.step2_edges);
    if (tracker.edges() != n) {
        throw LogicError(fmt::format("construction placed {} edges for {} cities",
                                     tracker.edges(), n));
    }

    std::vector<std::array<std::size_t, 2>> adj(n, {kNone, kNone});
    auto add = [&adj](std::size_t a, std::size_t b) {
        auto& slots = adj[a];
        slots[slots[0] == kNone ? 0 : 1] = b;
    };
    for (const auto* list : {&result.step1_edges, &result.step2_edges}) {
        for (const auto& [a, b] : *list) {
            add(a, b);
            add(b, a);
        }
    }

    std::vector<std::size_t> order;
    order.reserve(n);
    std::size_t prev = 0;
    std::size_t cur = std::min(adj[0][0], adj[0][1]);
    order.push_back(0);
    while (cur != 0 && order.size() <= n) {
        order.push_back(cur);
        const std::size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = next;
    }
    if (order.size() != n) {
        throw LogicError(fmt::format("construction produced a {}-city cycle for {} cities",
                                     order.size(), n));
    }
    result.tour = make_tour(std::move(order), m);
    return result;
}

void require_constructible(const DistanceMatrix& m, const CityStats& stats) {
    if (m.size() < 3) {
        throw DegenerateInstanceError("construct_tour: need at least 3 cities, got " +
                                      std::to_string(m.size()));
    }
    if (stats.size() != m.size()) {
        throw ConfigError("construct_tour: statistics do not match the matrix size");
    }
}

} // namespace

std::uint64_t run_main_step(int step, const DistanceMatrix& matrix, const CityStats& stats,
                            const ExponentCombo& combo, PathEndTracker& tracker,
                            std::vector<Edge>& edges) {
    if (step != 1 && step != 2) throw ConfigError("run_main_step: step must be 1 or 2");
    if (tracker.size() != matrix.size() || stats.size() != matrix.size()) {
        throw ConfigError("run_main_step: tracker/statistics do not match the matrix size");
    }
    validate_combo(combo, stats);
    const auto d_pow = powered_distances(matrix, combo.gamma);
    return main_step(step, matrix, stats, combo, d_pow, tracker, edges);
}

ConstructionResult construct_tour(const DistanceMatrix& matrix, const CityStats& stats,
                                  const ExponentCombo& combo) {
    require_constructible(matrix, stats);
    validate_combo(combo, stats);
    if (combo.gamma == 1.0) return construct_with(matrix, stats, combo, matrix.values());
    const auto d_pow = powered_distances(matrix, combo.gamma);
    return construct_with(matrix, stats, combo, d_pow);
}

ExponentGrid ExponentGrid::uniform(std::vector<double> values) {
    return ExponentGrid{values, values, values, values, values};
}

ExponentGrid ExponentGrid::standard() { return uniform({0.0, 0.5, 1.0}); }

std::vector<ExponentCombo> ExponentGrid::combos() const {
    auto sorted = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    };
    const auto a = sorted(alpha), b = sorted(beta), g = sorted(gamma), d = sorted(delta),
               e = sorted(epsilon);
    std::vector<ExponentCombo> out;
    out.reserve(a.size() * b.size() * g.size() * d.size() * e.size());
    for (double va : a)
        for (double vb : b)
            for (double vg : g)
                for (double vd : d)
                    for (double ve : e) out.push_back({va, vb, vg, vd, ve});
    return out;
}

GridSearchResult grid_search(const DistanceMatrix& matrix, const CityStats& stats,
                             std::span<const ExponentCombo> grid, unsigned threads) {
    if (grid.empty()) throw ConfigError("grid_search: empty exponent grid");
    require_constructible(matrix, stats);
    for (const auto& c : grid) validate_combo(c, stats);

    // One d^gamma table per distinct gamma; gamma = 1 reads the matrix itself.
    std::map<double, std::vector<double>> tables;
    for (const auto& c : grid) {
        if (c.gamma != 1.0 && !tables.contains(c.gamma)) {
            tables.emplace(c.gamma, powered_distances(matrix, c.gamma));
        }
    }
    auto table_for = [&](double gamma) -> std::span<const double> {
        if (gamma == 1.0) return matrix.values();
        return tables.at(gamma);
    };

    GridSearchResult out;
    out.combos.assign(grid.begin(), grid.end());
    out.lengths.assign(grid.size(), 0.0);

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> failures(grid.size());
    auto worker = [&] {
        for (std::size_t k = next++; k < grid.size(); k = next++) {
            try {
                out.lengths[k] =
                    construct_with(matrix, stats, grid[k], table_for(grid[k].gamma)).tour.length;
            } catch (...) {
                failures[k] = std::current_exception();
            }
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(grid.size())));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }

    std::size_t best = 0;
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (out.lengths[k] < out.lengths[best]) best = k;
    }
    out.best = construct_with(matrix, stats, grid[best], table_for(grid[best].gamma));
    return out;
}

} // namespace priotsp
