// io.hpp: JSON and CSV plumbing for the command-line front end.
//
// Matrix JSON: {"dim": n, "re": [[...]], "im": [[...]]} ("im" optional, zero;
// omitted when writing real matrices).
// State JSON:  {"n": n, "q": [...], "p": [...]}.

#pragma once

#include "geoqm/types.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace geoqm::io {

using Json = nlohmann::ordered_json;

// Bad input (maps to exit code 2).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numerical failure such as non-convergence (maps to exit code 1).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parses text; syntax errors become InputError "source:line:column: message".
Json parse_json(const std::string& text, const std::string& source = "<input>");
Json read_json_file(const std::string& path);

CMatrix matrix_from_json(const Json& j);
RMatrix real_matrix_from_json(const Json& j);  // rejects nonzero imaginary parts
Json matrix_to_json(const CMatrix& m, int precision = 17);
Json matrix_to_json(const RMatrix& m, int precision = 17);

RealPoint state_from_json(const Json& j);
Json state_to_json(const RealPoint& x, int precision = 17);

// Shortest decimal with `precision` significant digits (printf %.*g).
std::string format_number(double x, int precision);

// Rounds x to `precision` significant digits, for JSON output.
double round_sig(double x, int precision);

class CsvWriter {
public:
    CsvWriter(std::ostream& os, int precision) : os_(os), precision_(precision) {}

    void header(const std::vector<std::string>& names);
    CsvWriter& cell(double x);
    CsvWriter& cell(long long x);
    CsvWriter& cell(int x) { return cell(static_cast<long long>(x)); }
    CsvWriter& cell(const std::string& s);
    void end_row();

private:
    void sep();

    std::ostream& os_;
    int precision_;
    bool first_ = true;
};

}  // namespace geoqm::io
