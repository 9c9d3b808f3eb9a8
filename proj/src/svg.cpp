#include <algorithm>

#include <fmt/format.h>

#include "priotsp/bench.hpp"
#include "priotsp/error.hpp"

namespace priotsp {

namespace {

constexpr double kCanvas = 800.0;
constexpr double kMargin = 20.0;

struct Viewport {
    double min_x, max_y, scale;

    double x(double v) const { return kMargin + (v - min_x) * scale; }
    // SVG y grows downwards.
    double y(double v) const { return kMargin + (max_y - v) * scale; }
};

std::string closed_path(const Instance& inst, const Viewport& vp,
                        std::span<const std::size_t> order, std::string_view style) {
    std::string d;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const Point p = inst.coords[order[k]];
        d += fmt::format("{}{:.2f} {:.2f} ", k == 0 ? "M" : "L", vp.x(p.x), vp.y(p.y));
    }
    d += "Z";
    return fmt::format("  <path d=\"{}\" {}/>\n", d, style);
}

void check_order(std::span<const std::size_t> order, std::size_t n, const char* what) {
    const auto report = validate_tour(order, n);
    if (!report.ok()) throw ValidationError(fmt::format("plot_tour_svg: {} {}", what, report.describe()));
}

} // namespace

std::string plot_tour_svg(const Instance& instance, std::span<const std::size_t> tour,
                          std::optional<std::span<const std::size_t>> reference) {
    if (!instance.has_coordinates()) {
        throw UnsupportedError("plot_tour_svg: EXPLICIT instances have no coordinates to plot");
    }
    const std::size_t n = instance.coords.size();
    if (n == 0) throw DegenerateInstanceError("plot_tour_svg: empty instance");
    check_order(tour, n, "tour");
    if (reference) check_order(*reference, n, "reference tour");

    auto [min_x, max_x] = std::minmax_element(
        instance.coords.begin(), instance.coords.end(),
        [](const Point& a, const Point& b) { return a.x < b.x; });
    auto [min_y, max_y] = std::minmax_element(
        instance.coords.begin(), instance.coords.end(),
        [](const Point& a, const Point& b) { return a.y < b.y; });
    const double span_x = max_x->x - min_x->x;
    const double span_y = max_y->y - min_y->y;
    const double extent = std::max({span_x, span_y, 1e-12});
    const Viewport vp{min_x->x, max_y->y, (kCanvas - 2.0 * kMargin) / extent};
    const double width = 2.0 * kMargin + span_x * vp.scale;
    const double height = 2.0 * kMargin + span_y * vp.scale;

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0:.0f}\" "
        "height=\"{1:.0f}\" viewBox=\"0 0 {0:.2f} {1:.2f}\">\n",
        width, height);
    svg += fmt::format("  <title>{}</title>\n", instance.name);
    svg += fmt::format("  <rect width=\"{:.2f}\" height=\"{:.2f}\" fill=\"white\"/>\n", width,
                       height);
    if (reference) {
        svg += closed_path(instance, vp, *reference,
                           "fill=\"none\" stroke=\"#888888\" stroke-width=\"1.5\" "
                           "stroke-dasharray=\"5 4\" class=\"reference\"");
    }
    svg += closed_path(instance, vp, tour,
                       "fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" class=\"tour\"");
    for (const Point& p : instance.coords) {
        svg += fmt::format("  <circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"black\"/>\n",
                           vp.x(p.x), vp.y(p.y));
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace priotsp
