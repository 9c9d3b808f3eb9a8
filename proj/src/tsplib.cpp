#include "priotsp/tsplib.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "priotsp/error.hpp"

namespace priotsp {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            if (start < text.size()) lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const std::size_t b = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > b) out.push_back(line.substr(b, i - b));
    }
    return out;
}

double parse_real(std::string_view tok, std::size_t line) {
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
        throw ParseError(line, fmt::format("malformed number '{}'", tok));
    }
    return v;
}

long long parse_integer(std::string_view tok, std::size_t line) {
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError(line, fmt::format("malformed integer '{}'", tok));
    }
    return v;
}

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

/// Splits "KEY : VALUE" / "KEY: VALUE" / "KEY" into (KEY, VALUE).
std::pair<std::string, std::string_view> split_keyword(std::string_view line) {
    const auto colon = line.find(':');
    if (colon != std::string_view::npos) {
        return {upper(trim(line.substr(0, colon))), trim(line.substr(colon + 1))};
    }
    const auto t = tokens(line);
    if (t.empty()) return {"", {}};
    const auto rest = trim(line.substr(static_cast<std::size_t>(t[0].data() - line.data()) +
                                       t[0].size()));
    return {upper(t[0]), rest};
}

bool is_section_keyword(const std::string& key) {
    return key.ends_with("_SECTION") || key == "EOF";
}

bool looks_like_keyword(std::string_view line) {
    const auto t = tokens(line);
    if (t.empty()) return false;
    const char c = t[0].front();
    return std::isalpha(static_cast<unsigned char>(c)) != 0;
}

enum class WeightFormat { FullMatrix, UpperRow, LowerDiagRow };

struct Header {
    std::string name;
    std::optional<std::size_t> dimension;
    std::optional<DistanceKind> kind;
    std::size_t kind_line = 0;
    std::optional<WeightFormat> format;
    std::size_t format_line = 0;
};

/// Cursor over the line array shared by the section readers.
struct Cursor {
    const std::vector<std::string_view>& lines;
    std::size_t pos = 0;

    bool done() const { return pos >= lines.size(); }
    std::size_t line_no() const { return pos + 1; }
};

std::vector<Point> read_coords(Cursor& cur, std::size_t n, std::size_t section_line) {
    std::vector<Point> coords(n);
    std::vector<bool> filled(n, false);
    std::size_t count = 0;
    while (!cur.done()) {
        const auto line = trim(cur.lines[cur.pos]);
        if (line.empty()) {
            ++cur.pos;
            continue;
        }
        if (looks_like_keyword(line)) break;
        const auto t = tokens(line);
        if (t.size() != 3) {
            throw ParseError(cur.line_no(),
                             fmt::format("expected 'index x y', got {} fields", t.size()));
        }
        const long long id = parse_integer(t[0], cur.line_no());
        if (id < 1 || static_cast<std::size_t>(id) > n) {
            throw ParseError(cur.line_no(),
                             fmt::format("node index {} outside 1..{}", id, n));
        }
        const auto idx = static_cast<std::size_t>(id - 1);
        if (filled[idx]) {
            throw ParseError(cur.line_no(), fmt::format("node index {} repeated", id));
        }
        coords[idx] = {parse_real(t[1], cur.line_no()), parse_real(t[2], cur.line_no())};
        filled[idx] = true;
        ++count;
        ++cur.pos;
    }
    if (count != n) {
        throw ParseError(section_line,
                         fmt::format("NODE_COORD_SECTION: expected {} coordinates, found {}", n,
                                     count));
    }
    return coords;
}

std::vector<double> read_weights(Cursor& cur, std::size_t n, WeightFormat format,
                                 std::size_t section_line) {
    std::size_t needed = 0;
    switch (format) {
    case WeightFormat::FullMatrix:
        needed = n * n;
        break;
    case WeightFormat::UpperRow:
        needed = n * (n - 1) / 2;
        break;
    case WeightFormat::LowerDiagRow:
        needed = n * (n + 1) / 2;
        break;
    }
    std::vector<double> flat;
    flat.reserve(needed);
    while (!cur.done() && flat.size() < needed) {
        const auto line = trim(cur.lines[cur.pos]);
        if (!line.empty() && looks_like_keyword(line)) break;
        for (auto tok : tokens(line)) {
            if (flat.size() == needed) {
                throw ParseError(cur.line_no(), "EDGE_WEIGHT_SECTION: too many weights");
            }
            flat.push_back(parse_real(tok, cur.line_no()));
        }
        ++cur.pos;
    }
    if (flat.size() != needed) {
        throw ParseError(section_line,
                         fmt::format("EDGE_WEIGHT_SECTION: expected {} weights, found {}",
                                     needed, flat.size()));
    }

    std::vector<double> w(n * n, 0.0);
    std::size_t k = 0;
    switch (format) {
    case WeightFormat::FullMatrix:
        w = std::move(flat);
        break;
    case WeightFormat::UpperRow:
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) w[i * n + j] = w[j * n + i] = flat[k++];
        break;
    case WeightFormat::LowerDiagRow:
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j) w[i * n + j] = w[j * n + i] = flat[k++];
        break;
    }
    return w;
}

void skip_section(Cursor& cur) {
    while (!cur.done()) {
        const auto line = trim(cur.lines[cur.pos]);
        if (!line.empty() && looks_like_keyword(line)) return;
        ++cur.pos;
    }
}

} // namespace

Instance parse_tsplib(std::string_view text) {
    const auto lines = split_lines(text);
    Cursor cur{lines};
    Header h;
    Instance inst;
    bool have_data = false;

    auto require_dimension = [&](std::size_t line) {
        if (!h.dimension) throw ParseError(line, "section appears before DIMENSION");
        return *h.dimension;
    };

    while (!cur.done()) {
        const auto raw = trim(lines[cur.pos]);
        const std::size_t line_no = cur.line_no();
        if (raw.empty()) {
            ++cur.pos;
            continue;
        }
        auto [key, value] = split_keyword(raw);
        ++cur.pos;

        if (key == "EOF") break;
        if (key == "NAME") {
            h.name = std::string(value);
        } else if (key == "TYPE") {
            const auto t = upper(value);
            if (t != "TSP") {
                throw ParseError(line_no, fmt::format("unsupported problem TYPE '{}'", value));
            }
        } else if (key == "DIMENSION") {
            const long long d = parse_integer(value, line_no);
            if (d < 1) throw ParseError(line_no, "DIMENSION must be positive");
            h.dimension = static_cast<std::size_t>(d);
        } else if (key == "EDGE_WEIGHT_TYPE") {
            h.kind = distance_kind_from_string(upper(value));
            if (!h.kind) {
                throw ParseError(line_no,
                                 fmt::format("unsupported EDGE_WEIGHT_TYPE '{}'", value));
            }
            h.kind_line = line_no;
        } else if (key == "EDGE_WEIGHT_FORMAT") {
            const auto f = upper(value);
            if (f == "FULL_MATRIX") {
                h.format = WeightFormat::FullMatrix;
            } else if (f == "UPPER_ROW") {
                h.format = WeightFormat::UpperRow;
            } else if (f == "LOWER_DIAG_ROW") {
                h.format = WeightFormat::LowerDiagRow;
            } else {
                throw ParseError(line_no,
                                 fmt::format("unsupported EDGE_WEIGHT_FORMAT '{}'", value));
            }
            h.format_line = line_no;
        } else if (key == "NODE_COORD_SECTION") {
            const auto n = require_dimension(line_no);
            if (!h.kind) throw ParseError(line_no, "NODE_COORD_SECTION before EDGE_WEIGHT_TYPE");
            inst.coords = read_coords(cur, n, line_no);
            have_data = true;
        } else if (key == "EDGE_WEIGHT_SECTION") {
            const auto n = require_dimension(line_no);
            if (!h.format) throw ParseError(line_no, "EDGE_WEIGHT_SECTION without EDGE_WEIGHT_FORMAT");
            inst.explicit_weights = read_weights(cur, n, *h.format, line_no);
            have_data = true;
        } else if (is_section_keyword(key)) {
            skip_section(cur);
        }
        // Any other header keyword (COMMENT, NODE_COORD_TYPE, ...) is ignored.
    }

    if (!h.dimension) throw ParseError(0, "missing DIMENSION");
    if (!h.kind) throw ParseError(0, "missing EDGE_WEIGHT_TYPE");
    inst.name = h.name;
    inst.kind = *h.kind;
    if (inst.kind == DistanceKind::Explicit) {
        if (inst.explicit_weights.empty()) throw ParseError(0, "missing EDGE_WEIGHT_SECTION");
        inst.coords.clear();
        // Validates symmetry and the diagonal.
        try {
            (void)DistanceMatrix(*h.dimension, inst.explicit_weights);
        } catch (const ValidationError& e) {
            throw ParseError(0, std::string("EDGE_WEIGHT_SECTION: ") + e.what());
        }
    } else if (!have_data || inst.coords.empty()) {
        throw ParseError(0, "missing NODE_COORD_SECTION");
    }
    return inst;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
    return ss.str();
}

Instance read_tsplib_file(const std::filesystem::path& path) {
    const auto text = read_text_file(path);
    try {
        return parse_tsplib(text);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path.string() + ": " + e.what());
    }
}

std::string write_tsplib(const Instance& instance) {
    if (!instance.has_coordinates()) {
        throw UnsupportedError("write_tsplib: only coordinate instances are supported");
    }
    std::string out;
    out += fmt::format("NAME : {}\n", instance.name);
    out += "TYPE : TSP\n";
    out += fmt::format("DIMENSION : {}\n", instance.coords.size());
    out += fmt::format("EDGE_WEIGHT_TYPE : {}\n", to_string(instance.kind));
    out += "NODE_COORD_SECTION\n";
    for (std::size_t i = 0; i < instance.coords.size(); ++i) {
        // 17 significant digits round-trips doubles exactly.
        out += fmt::format("{} {:.17g} {:.17g}\n", i + 1, instance.coords[i].x,
                           instance.coords[i].y);
    }
    out += "EOF\n";
    return out;
}

std::string write_tour(const Tour& tour, std::string_view name, std::string_view fallback_name) {
    const auto report = validate_tour(tour.order, tour.order.size());
    if (!report.ok()) throw ValidationError("write_tour: " + report.describe());
    std::string out;
    out += fmt::format("NAME : {}\n", name.empty() ? fallback_name : name);
    out += "TYPE : TOUR\n";
    out += fmt::format("DIMENSION : {}\n", tour.order.size());
    out += "TOUR_SECTION\n";
    for (std::size_t city : tour.order) out += fmt::format("{}\n", city + 1);
    out += "-1\nEOF\n";
    return out;
}

std::vector<std::size_t> parse_tour(std::string_view text) {
    const auto lines = split_lines(text);
    std::optional<std::size_t> dimension;
    std::vector<std::size_t> order;
    bool in_section = false;
    bool terminated = false;
    for (std::size_t li = 0; li < lines.size() && !terminated; ++li) {
        const auto line = trim(lines[li]);
        if (line.empty()) continue;
        if (!in_section) {
            auto [key, value] = split_keyword(line);
            if (key == "EOF") break;
            if (key == "DIMENSION") {
                const long long d = parse_integer(value, li + 1);
                if (d < 0) throw ParseError(li + 1, "DIMENSION must be non-negative");
                dimension = static_cast<std::size_t>(d);
            } else if (key == "TOUR_SECTION") {
                in_section = true;
            }
            continue;
        }
        if (looks_like_keyword(line)) break;
        for (auto tok : tokens(line)) {
            const long long v = parse_integer(tok, li + 1);
            if (v == -1) {
                terminated = true;
                break;
            }
            if (v < 1) throw ParseError(li + 1, fmt::format("invalid city index {}", v));
            order.push_back(static_cast<std::size_t>(v - 1));
        }
    }
    if (!in_section) throw ParseError(0, "missing TOUR_SECTION");
    if (dimension && *dimension != order.size()) {
        throw ParseError(0, fmt::format("TOUR_SECTION: expected {} cities, found {}", *dimension,
                                        order.size()));
    }
    const auto report = validate_tour(order, order.size());
    if (!report.ok()) throw ParseError(0, "TOUR_SECTION is not a permutation: " + report.describe());
    return order;
}

std::vector<std::size_t> read_tour_file(const std::filesystem::path& path) {
    const auto text = read_text_file(path);
    try {
        return parse_tour(text);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path.string() + ": " + e.what());
    }
}

void OptimaTable::add(std::string name, std::int64_t length, std::size_t line) {
    if (length <= 0) {
        throw ParseError(line, fmt::format("optimum for '{}' must be positive, got {}", name,
                                           length));
    }
    const auto [it, inserted] = entries_.emplace(std::move(name), length);
    if (!inserted) throw ParseError(line, fmt::format("duplicate optimum for '{}'", it->first));
}

std::optional<std::int64_t> OptimaTable::find(std::string_view name) const {
    const auto it = entries_.find(name);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

std::int64_t OptimaTable::at(std::string_view name) const {
    const auto v = find(name);
    if (!v) throw ConfigError(fmt::format("no known optimum for '{}'", name));
    return *v;
}

OptimaTable load_optima(std::string_view fixture_text) {
    OptimaTable table;
    const auto lines = split_lines(fixture_text);
    for (std::size_t li = 0; li < lines.size(); ++li) {
        auto line = lines[li];
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        const auto t = tokens(line);
        if (t.empty()) continue;
        if (t.size() != 2) {
            throw ParseError(li + 1, fmt::format("expected 'name length', got {} fields", t.size()));
        }
        table.add(std::string(t[0]), parse_integer(t[1], li + 1), li + 1);
    }
    return table;
}

OptimaTable load_optima_file(const std::filesystem::path& path) {
    const auto text = read_text_file(path);
    try {
        return load_optima(text);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path.string() + ": " + e.what());
    }
}

} // namespace priotsp
