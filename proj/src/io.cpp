#include "geoqm/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace geoqm::io {

namespace {

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    // nlohmann reports the 1-based position of the last byte read.
    const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

const Json& field(const Json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) {
        throw InputError(std::string("missing field \"") + name + "\"");
    }
    return j.at(name);
}

RMatrix real_block(const Json& rows, Eigen::Index dim, const char* name) {
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != dim) {
        throw InputError(std::string("\"") + name + "\" must be an array of " + std::to_string(dim) + " rows");
    }
    RMatrix m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        const Json& row = rows[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
            throw InputError(std::string("\"") + name + "\" row " + std::to_string(r) + " must have " +
                             std::to_string(dim) + " entries");
        }
        for (Eigen::Index c = 0; c < dim; ++c) {
            const Json& v = row[static_cast<std::size_t>(c)];
            if (!v.is_number()) throw InputError(std::string("\"") + name + "\" entries must be numbers");
            m(r, c) = v.get<double>();
        }
    }
    return m;
}

RVector real_vector(const Json& arr, Eigen::Index n, const char* name) {
    if (!arr.is_array() || static_cast<Eigen::Index>(arr.size()) != n) {
        throw InputError(std::string("\"") + name + "\" must be an array of " + std::to_string(n) + " numbers");
    }
    RVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Json& x = arr[static_cast<std::size_t>(i)];
        if (!x.is_number()) throw InputError(std::string("\"") + name + "\" entries must be numbers");
        v(i) = x.get<double>();
    }
    return v;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte);
        std::string msg = e.what();
        if (const auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
        throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON: " + msg);
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path);
}

CMatrix matrix_from_json(const Json& j) {
    const Json& dim_field = field(j, "dim");
    if (!dim_field.is_number_integer() || dim_field.get<long long>() < 1) {
        throw InputError("\"dim\" must be a positive integer");
    }
    const auto dim = static_cast<Eigen::Index>(dim_field.get<long long>());
    const RMatrix re = real_block(field(j, "re"), dim, "re");
    const RMatrix im = j.contains("im") ? real_block(j.at("im"), dim, "im") : RMatrix::Zero(dim, dim);
    CMatrix m(dim, dim);
    m.real() = re;
    m.imag() = im;
    return m;
}

RMatrix real_matrix_from_json(const Json& j) {
    const CMatrix m = matrix_from_json(j);
    if (m.imag().cwiseAbs().maxCoeff() != 0.0) throw InputError("expected a real matrix (\"im\" must be zero)");
    return m.real();
}

double round_sig(double x, int precision) {
    if (x == 0.0) return 0.0;  // folds -0
    if (!std::isfinite(x)) return x;
    return std::stod(format_number(x, precision));
}

Json matrix_to_json(const CMatrix& m, int precision) {
    Json j;
    j["dim"] = m.rows();
    Json re = Json::array();
    Json im = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json rr = Json::array();
        Json ii = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            rr.push_back(round_sig(m(r, c).real(), precision));
            ii.push_back(round_sig(m(r, c).imag(), precision));
        }
        re.push_back(rr);
        im.push_back(ii);
    }
    j["re"] = re;
    j["im"] = im;
    return j;
}

Json matrix_to_json(const RMatrix& m, int precision) {
    Json j = matrix_to_json(CMatrix(m.cast<Complex>()), precision);
    j.erase("im");
    return j;
}

RealPoint state_from_json(const Json& j) {
    const Json& n_field = field(j, "n");
    if (!n_field.is_number_integer() || n_field.get<long long>() < 1) {
        throw InputError("\"n\" must be a positive integer");
    }
    const auto n = static_cast<Eigen::Index>(n_field.get<long long>());
    return RealPoint(real_vector(field(j, "q"), n, "q"), real_vector(field(j, "p"), n, "p"));
}

Json state_to_json(const RealPoint& x, int precision) {
    Json j;
    j["n"] = x.n();
    Json q = Json::array();
    Json p = Json::array();
    for (Eigen::Index i = 0; i < x.n(); ++i) {
        q.push_back(round_sig(x.q()(i), precision));
        p.push_back(round_sig(x.p()(i), precision));
    }
    j["q"] = q;
    j["p"] = p;
    return j;
}

std::string format_number(double x, int precision) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";  // folds -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    return buf;
}

void CsvWriter::header(const std::vector<std::string>& names) {
    for (const auto& n : names) cell(n);
    end_row();
}

void CsvWriter::sep() {
    if (!first_) os_ << ',';
    first_ = false;
}

CsvWriter& CsvWriter::cell(double x) {
    sep();
    os_ << format_number(x, precision_);
    return *this;
}

CsvWriter& CsvWriter::cell(long long x) {
    sep();
    os_ << x;
    return *this;
}

CsvWriter& CsvWriter::cell(const std::string& s) {
    sep();
    os_ << s;
    return *this;
}

void CsvWriter::end_row() {
    os_ << '\n';
    first_ = true;
}

}  // namespace geoqm::io
