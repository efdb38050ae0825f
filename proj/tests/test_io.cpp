#include "geoqm/io.hpp"

#include <doctest.h>

#include <sstream>

using namespace geoqm;
using namespace geoqm::io;

TEST_CASE("malformed JSON reports line and column") {
    try {
        parse_json("{\n  \"dim\": 2,\n  \"re\": [1, 2,, 3]\n}", "m.json");
        FAIL("no exception");
    } catch (const InputError& e) {
        const std::string msg = e.what();
        CHECK(msg.rfind("m.json:3:", 0) == 0);
        CHECK(msg.find("malformed JSON") != std::string::npos);
    }
    CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), InputError);
}

TEST_CASE("matrix schema") {
    const CMatrix m = matrix_from_json(parse_json(R"({"dim": 2, "re": [[0, 0], [0, 0]], "im": [[0, -1], [1, 0]]})"));
    CHECK(m(0, 1) == Complex(0, -1));
    CHECK(m(1, 0) == Complex(0, 1));
    const CMatrix r = matrix_from_json(parse_json(R"({"dim": 2, "re": [[1, 2], [3, 4]]})"));
    CHECK(r(1, 0) == Complex(3, 0));

    CHECK_THROWS_AS(matrix_from_json(parse_json(R"({"re": [[1]]})")), InputError);
    CHECK_THROWS_AS(matrix_from_json(parse_json(R"({"dim": 2, "re": [[1, 2]]})")), InputError);
    CHECK_THROWS_AS(matrix_from_json(parse_json(R"({"dim": 2, "re": [[1, 2], [3]]})")), InputError);
    CHECK_THROWS_AS(matrix_from_json(parse_json(R"({"dim": 1, "re": [["x"]]})")), InputError);
    CHECK_THROWS_AS(matrix_from_json(parse_json(R"({"dim": 0, "re": []})")), InputError);
    CHECK_THROWS_AS(real_matrix_from_json(parse_json(R"({"dim": 1, "re": [[1]], "im": [[1]]})")), InputError);

    const RMatrix back = real_matrix_from_json(matrix_to_json(RMatrix((RMatrix(2, 2) << 1, -2, 0.5, 3).finished())));
    CHECK(back == (RMatrix(2, 2) << 1, -2, 0.5, 3).finished());
}

TEST_CASE("state schema") {
    const RealPoint x = state_from_json(parse_json(R"({"n": 2, "q": [1, 2], "p": [3, 4]})"));
    CHECK(x.n() == 2);
    CHECK(x.to_complex()(1) == Complex(2, 4));
    CHECK_THROWS_AS(state_from_json(parse_json(R"({"n": 2, "q": [1], "p": [3, 4]})")), InputError);
    const RealPoint y = state_from_json(state_to_json(x));
    CHECK(y.coords() == x.coords());
}

TEST_CASE("number formatting") {
    CHECK(format_number(0.1, 12) == "0.1");
    CHECK(format_number(-0.0, 12) == "0");
    CHECK(format_number(1.0 / 3.0, 4) == "0.3333");
    CHECK(format_number(1e-20, 3) == "1e-20");
    CHECK(round_sig(1.0 / 3.0, 3) == 0.333);
    CHECK(!std::signbit(round_sig(-1e-300 * 1e-300, 12)));
}

TEST_CASE("CSV writer") {
    std::ostringstream os;
    CsvWriter w(os, 6);
    w.header({"a", "b", "c"});
    w.cell(1).cell(0.5).cell(std::string("x"));
    w.end_row();
    w.cell(2LL).cell(1.0 / 3.0).cell(std::string("y"));
    w.end_row();
    CHECK(os.str() == "a,b,c\n1,0.5,x\n2,0.333333,y\n");
}
