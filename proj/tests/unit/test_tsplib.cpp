#include <doctest.h>

#include <string>

#include "priotsp/error.hpp"
#include "priotsp/tsplib.hpp"

using namespace priotsp;

namespace {

const char* kSmall = R"(NAME : small4
COMMENT : four points
TYPE : TSP
DIMENSION : 4
EDGE_WEIGHT_TYPE : EUC_2D
NODE_COORD_SECTION
1 0 0
2 10 0
3 10 10
4 0 10
EOF
)";

std::size_t error_line(const std::string& text) {
    try {
        parse_tsplib(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return static_cast<std::size_t>(-1);
}

std::string error_text(const std::string& text) {
    try {
        parse_tsplib(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("parse a coordinate instance") {
    const auto inst = parse_tsplib(kSmall);
    CHECK(inst.name == "small4");
    CHECK(inst.kind == DistanceKind::Euc2D);
    REQUIRE(inst.size() == 4);
    CHECK(inst.coords[0] == Point{0, 0});
    CHECK(inst.coords[2] == Point{10, 10});
}

TEST_CASE("whitespace, blank lines, EOF and unknown keywords are tolerated") {
    const std::string text =
        "NAME: ws\n\n  TYPE :TSP  \nVEHICLES : 3\nDIMENSION:3\nEDGE_WEIGHT_TYPE :  ATT\n"
        "NODE_COORD_SECTION\n  1   1.5e1  2 \n\t2 3 4\n\n3 5 6   \n\n";
    const auto inst = parse_tsplib(text);
    CHECK(inst.kind == DistanceKind::Att);
    REQUIRE(inst.size() == 3);
    CHECK(inst.coords[0] == Point{15, 2});
    CHECK(inst.coords[2] == Point{5, 6});
}

TEST_CASE("explicit weight layouts agree") {
    const std::string head = "NAME: e\nTYPE: TSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EXPLICIT\n";
    const auto full = parse_tsplib(
        head + "EDGE_WEIGHT_FORMAT: FULL_MATRIX\nEDGE_WEIGHT_SECTION\n0 2 3\n2 0 4\n3 4 0\nEOF\n");
    const auto upper =
        parse_tsplib(head + "EDGE_WEIGHT_FORMAT: UPPER_ROW\nEDGE_WEIGHT_SECTION\n2 3\n4\n");
    const auto lower = parse_tsplib(
        head + "EDGE_WEIGHT_FORMAT: LOWER_DIAG_ROW\nEDGE_WEIGHT_SECTION\n0 2 0 3 4 0\nEOF\n");
    CHECK(full.kind == DistanceKind::Explicit);
    CHECK(full.explicit_weights == upper.explicit_weights);
    CHECK(full.explicit_weights == lower.explicit_weights);
    CHECK(build_distance_matrix(full)(1, 2) == 4.0);
}

TEST_CASE("display section is skipped") {
    const std::string text =
        "NAME: e\nTYPE: TSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: UPPER_ROW\n"
        "EDGE_WEIGHT_SECTION\n2 3 4\nDISPLAY_DATA_SECTION\n1 0 0\n2 1 1\n3 2 2\nEOF\n";
    CHECK(parse_tsplib(text).size() == 3);
}

TEST_CASE("wrong coordinate count cites the section") {
    const std::string text = "NAME: t\nTYPE: TSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EUC_2D\n"
                             "NODE_COORD_SECTION\n1 0 0\n2 1 1\nEOF\n";
    CHECK(error_line(text) == 5);
    CHECK(error_text(text).find("expected 3 coordinates, found 2") != std::string::npos);
}

TEST_CASE("distinct parse errors") {
    CHECK(error_text("NAME: t\nTYPE: TSP\nEDGE_WEIGHT_TYPE: EUC_2D\n").find("DIMENSION") !=
          std::string::npos);
    const std::string geo = "NAME: t\nTYPE: TSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: GEO\n";
    CHECK(error_line(geo) == 4);
    CHECK(error_text(geo).find("GEO") != std::string::npos);
    const std::string bad_number = "NAME: t\nTYPE: TSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EUC_2D\n"
                                   "NODE_COORD_SECTION\n1 0 0\n2 1 x1\n3 2 2\n";
    CHECK(error_line(bad_number) == 7);
    CHECK(error_text(bad_number).find("malformed") != std::string::npos);
    CHECK(error_line("NAME: t\nTYPE: ATSP\nDIMENSION: 3\n") == 2);
}

TEST_CASE("write_tsplib round-trips coordinates") {
    const auto gen = generate_random_euclidean(20, 3, 1e6);
    const auto back = parse_tsplib(write_tsplib(gen));
    CHECK(back.name == gen.name);
    CHECK(back.coords == gen.coords);
}

TEST_CASE("tour files are 1-based and terminated") {
    Tour t{{0, 2, 1}, 0.0};
    const auto text = write_tour(t, "tri");
    CHECK(text.find("NAME : tri") != std::string::npos);
    CHECK(text.find("TYPE : TOUR") != std::string::npos);
    CHECK(text.find("DIMENSION : 3") != std::string::npos);
    CHECK(text.find("TOUR_SECTION\n1\n3\n2\n-1\nEOF\n") != std::string::npos);
    CHECK(parse_tour(text) == t.order);
}

TEST_CASE("empty tour name falls back") {
    Tour t{{1, 0, 2}, 0.0};
    CHECK(write_tour(t, "", "berlin52").find("NAME : berlin52") != std::string::npos);
    CHECK(write_tour(t, "").find("NAME : tour") != std::string::npos);
    CHECK_THROWS_AS(write_tour(Tour{{0, 0, 1}, 0.0}, "x"), ValidationError);
}

TEST_CASE("malformed tour files") {
    CHECK_THROWS_AS(parse_tour("NAME: x\n1\n2\n"), ParseError);
    CHECK_THROWS_AS(parse_tour("TOUR_SECTION\n1\n1\n-1\n"), ParseError);
    CHECK_THROWS_AS(parse_tour("DIMENSION: 3\nTOUR_SECTION\n1\n2\n-1\n"), ParseError);
}

TEST_CASE("optima fixture") {
    const auto table =
        load_optima("# comment\neil51 426\n\ndsj1000   18660188 # trailing\natt48 33523\n");
    CHECK(table.size() == 3);
    CHECK(table.at("eil51") == 426);
    CHECK(table.at("dsj1000") == 18660188);
    CHECK(table.find("att48") == 33523);
    CHECK_FALSE(table.find("kroA100").has_value());
    CHECK_THROWS_AS(table.at("kroA100"), ConfigError);
    CHECK_THROWS_AS(load_optima("a 1\na 2\n"), ParseError);
    CHECK_THROWS_AS(load_optima("a 0\n"), ParseError);
    CHECK_THROWS_AS(load_optima("a -5\n"), ParseError);
    CHECK_THROWS_AS(load_optima("a 1 2\n"), ParseError);
}

TEST_CASE("shipped fixture holds every published entry") {
    const auto table = load_optima_file(PRIOTSP_DATA_DIR "/optima.txt");
    CHECK(table.size() == 25);
    CHECK(table.at("eil51") == 426);
    CHECK(table.at("berlin52") == 7542);
    CHECK(table.at("dsj1000") == 18660188);
    CHECK(table.at("att48") == 33523);
}

TEST_CASE("shipped instances parse") {
    const auto berlin = read_tsplib_file(PRIOTSP_DATA_DIR "/tsplib/berlin52.tsp");
    CHECK(berlin.size() == 52);
    CHECK(berlin.kind == DistanceKind::Euc2D);
    const auto pr = read_tsplib_file(PRIOTSP_DATA_DIR "/tsplib/pr107.tsp");
    CHECK(pr.size() == 107);
}

TEST_CASE("missing files raise I/O errors naming the path") {
    try {
        read_tsplib_file("/nonexistent/nowhere.tsp");
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("nowhere.tsp") != std::string::npos);
    }
}
