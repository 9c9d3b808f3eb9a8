#include <optional>
#include <string>
#include <vector>

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "priotsp/baselines.hpp"
#include "priotsp/bench.hpp"
#include "priotsp/bounds.hpp"
#include "priotsp/error.hpp"
#include "priotsp/instance.hpp"
#include "priotsp/priority.hpp"
#include "priotsp/tsplib.hpp"

namespace py = pybind11;
using namespace priotsp;

namespace {

DistanceMatrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    std::vector<double> flat;
    flat.reserve(n * n);
    for (const auto& r : rows) {
        if (r.size() != n) throw ValidationError("distance matrix rows must all have length n");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return DistanceMatrix(n, std::move(flat));
}

std::vector<std::vector<double>> matrix_rows(const DistanceMatrix& m) {
    std::vector<std::vector<double>> out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) out[i].assign(m.row(i).begin(), m.row(i).end());
    return out;
}

std::vector<ExponentCombo> grid_from(const std::optional<std::vector<double>>& values,
                                     const std::optional<std::vector<ExponentCombo>>& combos) {
    if (combos) return *combos;
    return ExponentGrid::uniform(values.value_or(std::vector<double>{0.0, 0.5, 1.0})).combos();
}

py::dict record_dict(const BenchRecord& r) {
    py::dict d;
    d["instance"] = r.instance_name;
    d["n"] = r.n;
    d["method"] = std::string(to_string(r.method));
    d["combo"] = r.combo ? py::cast(*r.combo) : py::none();
    d["length"] = r.tour_length;
    d["reference"] = r.reference;
    d["reference_kind"] = std::string(to_string(r.reference_kind));
    d["pct_error"] = r.pct_error;
    d["wall_millis"] = r.wall_millis;
    return d;
}

} // namespace

PYBIND11_MODULE(_priotsp, m) {
    m.doc() = "Priority-driven TSP construction, baselines, bounds and benchmark harness";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", error);
    py::register_exception<ValidationError>(m, "ValidationError", error);
    py::register_exception<DegenerateInstanceError>(m, "DegenerateInstanceError", error);
    py::register_exception<SizeLimitError>(m, "SizeLimitError", error);
    py::register_exception<UnsupportedError>(m, "UnsupportedError", error);
    py::register_exception<IoError>(m, "IoError", error);
    py::register_exception<ParseError>(m, "ParseError", error);

    py::enum_<DistanceKind>(m, "DistanceKind")
        .value("EUC_2D", DistanceKind::Euc2D)
        .value("ATT", DistanceKind::Att)
        .value("CEIL_2D", DistanceKind::Ceil2D)
        .value("EXPLICIT", DistanceKind::Explicit);

    py::class_<Instance>(m, "Instance")
        .def(py::init([](std::string name, DistanceKind kind,
                         const std::vector<std::pair<double, double>>& coords) {
                 Instance inst{std::move(name), kind, {}, {}};
                 for (const auto& [x, y] : coords) inst.coords.push_back({x, y});
                 return inst;
             }),
             py::arg("name"), py::arg("kind"), py::arg("coords"))
        .def_readwrite("name", &Instance::name)
        .def_readonly("kind", &Instance::kind)
        .def_property_readonly("coords",
                               [](const Instance& i) {
                                   std::vector<std::pair<double, double>> out;
                                   for (const auto& p : i.coords) out.emplace_back(p.x, p.y);
                                   return out;
                               })
        .def("__len__", &Instance::size)
        .def("__repr__", [](const Instance& i) {
            return "<Instance " + i.name + " n=" + std::to_string(i.size()) + " " +
                   std::string(to_string(i.kind)) + ">";
        });

    py::class_<DistanceMatrix>(m, "DistanceMatrix")
        .def(py::init(&matrix_from_rows), py::arg("rows"))
        .def_property_readonly("size", &DistanceMatrix::size)
        .def("__len__", &DistanceMatrix::size)
        .def("__getitem__",
             [](const DistanceMatrix& d, std::pair<std::size_t, std::size_t> ij) {
                 if (ij.first >= d.size() || ij.second >= d.size()) throw py::index_error();
                 return d(ij.first, ij.second);
             })
        .def("rows", &matrix_rows);

    py::class_<CityStats>(m, "CityStats")
        .def_readonly("mu", &CityStats::mu)
        .def_readonly("sigma", &CityStats::sigma);

    py::class_<Tour>(m, "Tour")
        .def(py::init<>())
        .def_readwrite("order", &Tour::order)
        .def_readwrite("length", &Tour::length)
        .def("__repr__", [](const Tour& t) {
            return "<Tour n=" + std::to_string(t.order.size()) + " length=" + std::to_string(t.length) + ">";
        });

    py::class_<ExponentCombo>(m, "ExponentCombo")
        .def(py::init<double, double, double, double, double>(), py::arg("alpha") = 0.0,
             py::arg("beta") = 0.0, py::arg("gamma") = 0.0, py::arg("delta") = 0.0,
             py::arg("epsilon") = 0.0)
        .def_readwrite("alpha", &ExponentCombo::alpha)
        .def_readwrite("beta", &ExponentCombo::beta)
        .def_readwrite("gamma", &ExponentCombo::gamma)
        .def_readwrite("delta", &ExponentCombo::delta)
        .def_readwrite("epsilon", &ExponentCombo::epsilon)
        .def("as_tuple", [](const ExponentCombo& c) {
            return py::make_tuple(c.alpha, c.beta, c.gamma, c.delta, c.epsilon);
        })
        .def(py::self == py::self)
        .def("__repr__", [](const ExponentCombo& c) { return "ExponentCombo" + to_string(c); });

    py::class_<ConstructionResult>(m, "ConstructionResult")
        .def_readonly("tour", &ConstructionResult::tour)
        .def_readonly("combo", &ConstructionResult::combo)
        .def_readonly("step1_edges", &ConstructionResult::step1_edges)
        .def_readonly("step2_edges", &ConstructionResult::step2_edges)
        .def_readonly("neighbor_evaluations", &ConstructionResult::neighbor_evaluations);

    py::class_<GridSearchResult>(m, "GridSearchResult")
        .def_readonly("best", &GridSearchResult::best)
        .def_readonly("combos", &GridSearchResult::combos)
        .def_readonly("lengths", &GridSearchResult::lengths);

    py::class_<LowerBoundResult>(m, "LowerBoundResult")
        .def_readonly("bound", &LowerBoundResult::bound)
        .def_readonly("iterations_used", &LowerBoundResult::iterations_used)
        .def_readonly("potentials", &LowerBoundResult::potentials);

    // Instances and files.
    m.def("parse_tsplib", &parse_tsplib, py::arg("text"));
    m.def("read_tsplib_file", &read_tsplib_file, py::arg("path"));
    m.def("write_tsplib", &write_tsplib, py::arg("instance"));
    m.def("write_tour", &write_tour, py::arg("tour"), py::arg("name"),
          py::arg("fallback_name") = "tour");
    m.def("parse_tour", &parse_tour, py::arg("text"));
    m.def("load_optima", [](const std::string& text) { return load_optima(text).entries(); },
          py::arg("text"), "Name -> best known length.");
    m.def("generate_random_euclidean", &generate_random_euclidean, py::arg("n"), py::arg("seed"),
          py::arg("box_side") = 1e6);
    m.def("distance",
          [](DistanceKind kind, std::pair<double, double> a, std::pair<double, double> b) {
              return distance(kind, {a.first, a.second}, {b.first, b.second});
          },
          py::arg("kind"), py::arg("a"), py::arg("b"));
    m.def("distance_matrix", &build_distance_matrix, py::arg("instance"));
    m.def("city_stats", &city_stats, py::arg("matrix"));
    m.def("tour_length", [](const std::vector<std::size_t>& order, const DistanceMatrix& d) {
        return tour_length(order, d);
    }, py::arg("order"), py::arg("matrix"));
    m.def("is_valid_tour", [](const std::vector<std::size_t>& order, std::size_t n) {
        return validate_tour(order, n).ok();
    }, py::arg("order"), py::arg("n"));

    // Construction.
    m.def("city_priority", &city_priority, py::arg("mu"), py::arg("sigma"), py::arg("alpha"),
          py::arg("beta"));
    m.def("neighbor_score", &neighbor_score, py::arg("mu"), py::arg("sigma"), py::arg("d"),
          py::arg("gamma"), py::arg("delta"), py::arg("epsilon"));
    m.def("construct_tour",
          [](const DistanceMatrix& d, const ExponentCombo& c) {
              return construct_tour(d, city_stats(d), c);
          },
          py::arg("matrix"), py::arg("combo"));
    m.def("grid_combos", [](std::vector<double> values) { return ExponentGrid::uniform(std::move(values)).combos(); },
          py::arg("values") = std::vector<double>{0.0, 0.5, 1.0});
    m.def("grid_search",
          [](const DistanceMatrix& d, std::optional<std::vector<double>> values,
             std::optional<std::vector<ExponentCombo>> combos, unsigned threads) {
              const auto grid = grid_from(values, combos);
              py::gil_scoped_release release;
              return grid_search(d, city_stats(d), grid, threads);
          },
          py::arg("matrix"), py::arg("values") = py::none(), py::arg("combos") = py::none(),
          py::arg("threads") = 1);

    // Baselines and references.
    m.def("nearest_neighbor", &nearest_neighbor, py::arg("matrix"), py::arg("start") = 0);
    m.def("greedy_edge", &greedy_edge, py::arg("matrix"));
    m.def("clarke_wright", &clarke_wright, py::arg("matrix"), py::arg("hub") = py::none());
    m.def("exact_optimum", &exact_optimum, py::arg("matrix"));
    m.def("one_tree_value", [](const DistanceMatrix& d, const std::vector<double>& pi) {
        return one_tree_value(d, pi);
    }, py::arg("matrix"), py::arg("pi"));
    m.def("held_karp_bound",
          [](const DistanceMatrix& d, double hint, std::size_t max_iters) {
              AscentOptions opt;
              opt.max_iters = max_iters;
              return held_karp_bound(d, hint, opt);
          },
          py::arg("matrix"), py::arg("upper_bound_hint"), py::arg("max_iters") = 1000);

    // Benchmark harness.
    m.def("percent_error", &percent_error, py::arg("length"), py::arg("reference"));
    m.def("run_benchmark",
          [](const std::vector<std::filesystem::path>& files,
             const std::vector<std::tuple<std::size_t, std::size_t, std::uint64_t>>& random,
             const std::optional<std::filesystem::path>& optima, const std::vector<std::string>& methods,
             std::vector<double> grid, std::size_t iters, bool bound_fallback, const std::string& format) {
              RunConfig cfg;
              cfg.instance_files = files;
              for (const auto& [n, count, seed] : random) cfg.random.push_back({n, count, seed, 1e6});
              if (optima) cfg.optima = load_optima_file(*optima);
              cfg.methods.clear();
              for (const auto& name : methods) cfg.methods.push_back(method_from_string(name));
              cfg.grid = ExponentGrid::uniform(std::move(grid));
              cfg.ascent.max_iters = iters;
              cfg.bound_fallback = bound_fallback;
              const auto fmt = report_format_from_string(format);
              std::vector<BenchRecord> records;
              std::string report;
              {
                  py::gil_scoped_release release;
                  records = run_benchmark(cfg);
                  report = render_report(records, fmt);
              }
              py::list out;
              for (const auto& r : records) out.append(record_dict(r));
              return py::make_tuple(out, report);
          },
          py::arg("files") = std::vector<std::filesystem::path>{},
          py::arg("random") = std::vector<std::tuple<std::size_t, std::size_t, std::uint64_t>>{},
          py::arg("optima") = py::none(), py::arg("methods") = std::vector<std::string>{"proposed"},
          py::arg("grid") = std::vector<double>{0.0, 0.5, 1.0}, py::arg("iters") = 1000,
          py::arg("bound_fallback") = false, py::arg("format") = "csv",
          "Returns (records as dicts, rendered report).");
    m.def("plot_tour_svg",
          [](const Instance& inst, const std::vector<std::size_t>& tour,
             const std::optional<std::vector<std::size_t>>& reference) {
              if (reference) return plot_tour_svg(inst, tour, std::span<const std::size_t>(*reference));
              return plot_tour_svg(inst, tour);
          },
          py::arg("instance"), py::arg("tour"), py::arg("reference") = py::none());

    m.attr("__version__") = PRIOTSP_VERSION;
}
