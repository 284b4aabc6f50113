#include "unistoch/json_io.hpp"

#include <fstream>

namespace unistoch {

namespace {

Json complex_matrix_entries(const CMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix parse_real_entries(const Json& entries, int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
        const auto& row = entries.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw Error(ErrorCode::ParseError, "row " + std::to_string(i) + " has wrong length");
        for (int j = 0; j < n; ++j) {
            if (!row.at(j).is_number())
                throw Error(ErrorCode::ParseError, "real matrix entries must be numbers");
            m(i, j) = row.at(j).get<double>();
        }
    }
    return m;
}

CMatrix parse_complex_entries(const Json& entries, int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        const auto& row = entries.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw Error(ErrorCode::ParseError, "row " + std::to_string(i) + " has wrong length");
        for (int j = 0; j < n; ++j) {
            const auto& cell = row.at(j);
            if (!cell.is_array() || cell.size() != 2 || !cell.at(0).is_number() ||
                !cell.at(1).is_number())
                throw Error(ErrorCode::ParseError, "complex entries must be [re, im] pairs");
            m(i, j) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
        }
    }
    return m;
}

void check_header(const Json& j, const std::string& expected_kind, int& n_out) {
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "expected a JSON object");
    if (!j.contains("n") || !j.at("n").is_number_integer())
        throw Error(ErrorCode::ParseError, "missing integer field 'n'");
    if (!j.contains("kind") || !j.at("kind").is_string())
        throw Error(ErrorCode::ParseError, "missing string field 'kind'");
    if (j.at("kind").get<std::string>() != expected_kind)
        throw Error(ErrorCode::ParseError,
                    "expected kind '" + expected_kind + "', got '" +
                        j.at("kind").get<std::string>() + "'");
    if (!j.contains("entries") || !j.at("entries").is_array())
        throw Error(ErrorCode::ParseError, "missing array field 'entries'");
    n_out = j.at("n").get<int>();
    if (n_out < 1 || static_cast<int>(j.at("entries").size()) != n_out)
        throw Error(ErrorCode::ParseError, "'entries' does not match 'n'");
}

} // namespace

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const BistochasticMatrix& b) {
    return Json{{"n", b.dim()}, {"kind", "bistochastic"}, {"entries", matrix_to_json(b.entries())}};
}

Json to_json(const UnitaryMatrix& u) {
    return Json{{"n", u.dim()}, {"kind", "unitary"}, {"entries", complex_matrix_entries(u.entries())}};
}

Json to_json(const UnistochasticityVerdict& v) {
    Json j{{"status", to_string(v.status)},
           {"defect", v.defect},
           {"method", to_string(v.method)},
           {"witness", nullptr}};
    if (v.witness) j["witness"] = complex_matrix_entries(v.witness->inner().entries());
    return j;
}

Json to_json(const EntangledBasis& basis) {
    Json vectors = Json::array();
    for (const auto& v : basis.vectors) {
        Json vec = Json::array();
        for (Eigen::Index i = 0; i < v.size(); ++i)
            vec.push_back(Json::array({v(i).real(), v(i).imag()}));
        vectors.push_back(std::move(vec));
    }
    return Json{{"n", basis.n}, {"kind", "entangled_basis"}, {"vectors", std::move(vectors)}};
}

BistochasticMatrix read_bistochastic(const Json& j, double atol) {
    int n = 0;
    check_header(j, "bistochastic", n);
    return BistochasticMatrix(parse_real_entries(j.at("entries"), n), atol);
}

UnitaryMatrix read_unitary(const Json& j, double atol) {
    int n = 0;
    check_header(j, "unitary", n);
    return UnitaryMatrix(parse_complex_entries(j.at("entries"), n), atol);
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
    }
    return j;
}

} // namespace unistoch
