#pragma once

/** \file matrix_io.hpp
 *  \brief JSON forms of matrices {"dim", "entries": [[[re, im], ...], ...]} and of Laurent
 *         polynomials {"coeffs": {"k": [re, im]}}.
 */

#include <fstream>
#include <json.hpp>
#include <string>

#include "laurent.hpp"

namespace shiftlab {

using Json = nlohmann::ordered_json;

inline Json complex_to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw FormatError("complex value must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline Json matrix_to_json(const Matrix& M) {
    Json rows = Json::array();
    for (Index r = 0; r < M.rows(); ++r) {
        Json row = Json::array();
        for (Index c = 0; c < M.cols(); ++c) row.push_back(complex_to_json(M(r, c)));
        rows.push_back(std::move(row));
    }
    Json out;
    out["dim"] = M.rows();
    out["entries"] = std::move(rows);
    return out;
}

inline Matrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
        throw FormatError("matrix object needs \"dim\" and \"entries\"");
    const auto d = j.at("dim").get<long long>();
    if (d <= 0) throw FormatError("matrix dim must be positive");
    const Json& rows = j.at("entries");
    if (!rows.is_array() || (long long)rows.size() != d) throw FormatError("entries must have dim rows");
    Matrix M(d, d);
    for (Index r = 0; r < d; ++r) {
        const Json& row = rows[std::size_t(r)];
        if (!row.is_array() || (long long)row.size() != d) throw FormatError("each row must have dim entries");
        for (Index c = 0; c < d; ++c) M(r, c) = complex_from_json(row[std::size_t(c)]);
    }
    if (!M.allFinite()) throw FormatError("matrix entries must be finite");
    return M;
}

inline Json function_to_json(const LaurentPolynomial& f) {
    Json coeffs = Json::object();
    for (const auto& [k, c] : f.coeffs()) coeffs[std::to_string(k)] = complex_to_json(c);
    Json out;
    out["coeffs"] = std::move(coeffs);
    return out;
}

inline LaurentPolynomial function_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("coeffs") || !j.at("coeffs").is_object())
        throw FormatError("function object needs a \"coeffs\" map");
    LaurentPolynomial f;
    for (const auto& [key, value] : j.at("coeffs").items()) {
        std::size_t used = 0;
        int k = 0;
        try {
            k = std::stoi(key, &used);
        } catch (const std::exception&) {
            throw FormatError("coefficient key \"" + key + "\" is not an integer");
        }
        if (used != key.size()) throw FormatError("coefficient key \"" + key + "\" is not an integer");
        f.add(k, complex_from_json(value));
    }
    return f;
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path);
    out << text;
}

}  // namespace shiftlab
