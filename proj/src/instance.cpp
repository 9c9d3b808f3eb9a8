#include "priotsp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "priotsp/error.hpp"

namespace priotsp {

std::string_view to_string(DistanceKind kind) {
    switch (kind) {
    case DistanceKind::Euc2D:
        return "EUC_2D";
    case DistanceKind::Att:
        return "ATT";
    case DistanceKind::Ceil2D:
        return "CEIL_2D";
    case DistanceKind::Explicit:
        return "EXPLICIT";
    }
    return "UNKNOWN";
}

std::optional<DistanceKind> distance_kind_from_string(std::string_view name) {
    if (name == "EUC_2D") return DistanceKind::Euc2D;
    if (name == "ATT") return DistanceKind::Att;
    if (name == "CEIL_2D") return DistanceKind::Ceil2D;
    if (name == "EXPLICIT") return DistanceKind::Explicit;
    return std::nullopt;
}

std::size_t Instance::size() const {
    if (kind == DistanceKind::Explicit) {
        auto n = static_cast<std::size_t>(std::llround(std::sqrt(explicit_weights.size())));
        return n;
    }
    return coords.size();
}

namespace {

// TSPLIB's nint(): round half away from zero via (int)(x + 0.5) for x >= 0.
double nint(double x) { return std::floor(x + 0.5); }

} // namespace

double distance(DistanceKind kind, Point a, Point b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    switch (kind) {
    case DistanceKind::Euc2D:
        return nint(std::sqrt(dx * dx + dy * dy));
    case DistanceKind::Ceil2D:
        return std::ceil(std::sqrt(dx * dx + dy * dy));
    case DistanceKind::Att: {
        const double r = std::sqrt((dx * dx + dy * dy) / 10.0);
        const double t = nint(r);
        return t < r ? t + 1.0 : t;
    }
    case DistanceKind::Explicit:
        break;
    }
    throw ConfigError("distance(): kind " + std::string(to_string(kind)) +
                      " has no coordinate rule");
}

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> values)
    : n_(n), d_(std::move(values)) {
    if (d_.size() != n_ * n_) {
        throw ValidationError("distance matrix: expected " + std::to_string(n_ * n_) +
                              " entries, got " + std::to_string(d_.size()));
    }
    for (std::size_t i = 0; i < n_; ++i) {
        if (d_[i * n_ + i] != 0.0) {
            throw ValidationError("distance matrix: non-zero diagonal at " + std::to_string(i));
        }
        for (std::size_t j = i + 1; j < n_; ++j) {
            const double a = d_[i * n_ + j];
            const double b = d_[j * n_ + i];
            if (!std::isfinite(a) || a < 0.0) {
                throw ValidationError("distance matrix: invalid entry at (" + std::to_string(i) +
                                      ", " + std::to_string(j) + ")");
            }
            if (a != b) {
                throw ValidationError("distance matrix: asymmetric at (" + std::to_string(i) +
                                      ", " + std::to_string(j) + ")");
            }
        }
    }
}

DistanceMatrix build_distance_matrix(const Instance& instance) {
    if (instance.kind == DistanceKind::Explicit) {
        const std::size_t n = instance.size();
        return DistanceMatrix(n, instance.explicit_weights);
    }
    const std::size_t n = instance.coords.size();
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = distance(instance.kind, instance.coords[i], instance.coords[j]);
            d[i * n + j] = v;
            d[j * n + i] = v;
        }
    }
    return DistanceMatrix(n, std::move(d));
}

CityStats city_stats(const DistanceMatrix& matrix) {
    const std::size_t n = matrix.size();
    if (n < 2) {
        throw DegenerateInstanceError("city_stats: need at least 2 cities, got " +
                                      std::to_string(n));
    }
    CityStats stats;
    stats.mu.resize(n);
    stats.sigma.resize(n);
    const double others = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = matrix.row(i);
        // Diagonal is zero, so summing the whole row is the sum over j != i.
        const double mean = std::accumulate(row.begin(), row.end(), 0.0) / others;
        double ss = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double dev = row[j] - mean;
            ss += dev * dev;
        }
        stats.mu[i] = mean;
        stats.sigma[i] = std::sqrt(ss / others);
    }
    return stats;
}

std::string TourReport::describe() const {
    if (ok()) return "ok";
    std::ostringstream os;
    auto list = [&os](const char* label, const std::vector<std::size_t>& v) {
        if (v.empty()) return;
        os << label;
        for (std::size_t k = 0; k < v.size(); ++k) os << (k ? ", " : " ") << v[k];
        os << "; ";
    };
    list("duplicate", duplicates);
    list("missing", missing);
    list("out of range", out_of_range);
    std::string s = os.str();
    s.resize(s.size() - 2);
    return s;
}

TourReport validate_tour(std::span<const std::size_t> order, std::size_t n) {
    TourReport report;
    std::vector<unsigned> seen(n, 0);
    for (std::size_t city : order) {
        if (city >= n) {
            report.out_of_range.push_back(city);
            continue;
        }
        if (seen[city]++ == 1) report.duplicates.push_back(city);
    }
    for (std::size_t c = 0; c < n; ++c) {
        if (seen[c] == 0) report.missing.push_back(c);
    }
    std::sort(report.duplicates.begin(), report.duplicates.end());
    return report;
}

double tour_length(std::span<const std::size_t> order, const DistanceMatrix& matrix) {
    const auto report = validate_tour(order, matrix.size());
    if (!report.ok()) throw ValidationError("tour is not a permutation: " + report.describe());
    const std::size_t n = order.size();
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) total += matrix(order[k], order[(k + 1) % n]);
    return total;
}

Tour make_tour(std::vector<std::size_t> order, const DistanceMatrix& matrix) {
    const double len = tour_length(order, matrix);
    return Tour{std::move(order), len};
}

Instance generate_random_euclidean(std::size_t n, std::uint64_t seed, double box_side) {
    if (n < 3) {
        throw DegenerateInstanceError("generate_random_euclidean: n must be >= 3, got " +
                                      std::to_string(n));
    }
    if (!(box_side > 0.0) || !std::isfinite(box_side)) {
        throw ConfigError("generate_random_euclidean: box side must be positive and finite");
    }
    std::mt19937_64 engine(seed);
    auto unit = [&engine] { return static_cast<double>(engine() >> 11) * 0x1.0p-53; };
    Instance inst;
    inst.name = "rand" + std::to_string(n) + "_s" + std::to_string(seed);
    inst.kind = DistanceKind::Euc2D;
    inst.coords.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = unit() * box_side;
        const double y = unit() * box_side;
        inst.coords.push_back({x, y});
    }
    return inst;
}

} // namespace priotsp
