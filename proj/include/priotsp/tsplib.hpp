#pragma once

/// @file tsplib.hpp
/// @brief TSPLIB instance/tour files and the known-optima fixture.
///
/// Indices are 0-based everywhere inside the library; the 1-based TSPLIB
/// numbering is converted only in this module.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "priotsp/instance.hpp"

namespace priotsp {

/// Parses a TSPLIB instance.
///
/// Supported EDGE_WEIGHT_TYPE values are EUC_2D, ATT, CEIL_2D and EXPLICIT
/// (EDGE_WEIGHT_FORMAT FULL_MATRIX, UPPER_ROW or LOWER_DIAG_ROW). Unknown
/// header keywords are ignored; display and fixed-edge sections are skipped.
/// Throws ParseError naming the offending line.
Instance parse_tsplib(std::string_view text);

Instance read_tsplib_file(const std::filesystem::path& path);

/// Writes an instance with coordinates in TSPLIB format (used by `gen`).
std::string write_tsplib(const Instance& instance);

/// TSPLIB .tour text; falls back to `fallback_name` when `name` is empty.
std::string write_tour(const Tour& tour, std::string_view name,
                       std::string_view fallback_name = "tour");

/// Reads the TOUR_SECTION of a .tour file back into a 0-based order.
std::vector<std::size_t> parse_tour(std::string_view text);

std::vector<std::size_t> read_tour_file(const std::filesystem::path& path);

/// Best known tour lengths by instance name.
class OptimaTable {
  public:
    OptimaTable() = default;

    /// Throws ParseError on a duplicate name or non-positive length.
    void add(std::string name, std::int64_t length, std::size_t line = 0);

    std::optional<std::int64_t> find(std::string_view name) const;
    std::int64_t at(std::string_view name) const;
    std::size_t size() const noexcept { return entries_.size(); }
    const std::map<std::string, std::int64_t, std::less<>>& entries() const noexcept {
        return entries_;
    }

  private:
    std::map<std::string, std::int64_t, std::less<>> entries_;
};

/// Two whitespace-separated columns `name length`; `#` starts a comment.
OptimaTable load_optima(std::string_view fixture_text);

OptimaTable load_optima_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

} // namespace priotsp
