#pragma once

/** \file ssf_io.hpp
 *  \brief SSF JSON {n, gauge, hat_eta_n, eta1, probes} and the theta/Re/Im CSV export.
 */

#include <cstdio>
#include <sstream>

#include "matrix_io.hpp"
#include "ssf.hpp"

namespace shiftlab {

inline Json ssf_to_json(const SpectralShiftData& ssf) {
    Json out;
    out["n"] = ssf.n;
    out["kind"] = to_string(ssf.kind);
    out["gauge"] = to_string(ssf.gauge);
    out["probe_range"] = ssf.probe_range;
    Json eta = Json::object();
    for (const auto& [q, c] : ssf.hat_eta_n) eta[std::to_string(q)] = complex_to_json(c);
    out["hat_eta_n"] = std::move(eta);
    Json eta1 = Json::array();
    for (const auto& c : ssf.eta1_coeffs()) eta1.push_back(complex_to_json(c));
    out["eta1"] = std::move(eta1);
    if (ssf.gauge == Gauge::distributed) {
        Json lower = Json::array();
        for (const auto& e : ssf.lower) lower.push_back(function_to_json(e));
        out["lower"] = std::move(lower);
    }
    Json probes = Json::object();
    for (const auto& [m, t] : ssf.probe_traces) probes[std::to_string(m)] = complex_to_json(t);
    out["probes"] = std::move(probes);
    return out;
}

inline SpectralShiftData ssf_from_json(const Json& j) {
    SpectralShiftData ssf;
    try {
        ssf.n = j.at("n").get<int>();
        const std::string kind = j.value("kind", "mult-unitary");
        ssf.kind = kind == "linear" ? ShiftKind::linear
                   : kind == "mult-contraction" ? ShiftKind::mult_contraction
                                                : ShiftKind::mult_unitary;
        ssf.gauge = j.value("gauge", "eta1-lower") == "distributed" ? Gauge::distributed : Gauge::lower_in_eta1;
        ssf.probe_range = j.value("probe_range", 0);
        for (const auto& [key, value] : j.at("hat_eta_n").items()) ssf.hat_eta_n[std::stoi(key)] = complex_from_json(value);
        for (const auto& [key, value] : j.at("probes").items()) ssf.probe_traces[std::stoi(key)] = complex_from_json(value);
    } catch (const Json::exception& e) {
        throw FormatError(std::string("SSF document: ") + e.what());
    }
    if (ssf.kind != ShiftKind::linear) {
        ssf.lower.assign(std::size_t(std::max(ssf.n - 1, 0)), LaurentPolynomial{});
        if (ssf.gauge == Gauge::distributed && j.contains("lower")) {
            std::size_t k = 0;
            for (const auto& e : j.at("lower")) {
                if (k < ssf.lower.size()) ssf.lower[k] = function_from_json(e);
                ++k;
            }
        } else if (!ssf.lower.empty() && j.contains("eta1")) {
            int m = 1;
            for (const auto& c : j.at("eta1")) ssf.lower[0].add(-m++, complex_from_json(c));
        }
    }
    return ssf;
}

/// CSV with header theta,re,im and one row per grid point.
inline std::string eta_csv(const SpectralShiftData& ssf, int grid) {
    std::ostringstream out;
    out << "theta,re,im\n";
    char line[128];
    for (const auto& [theta, v] : synthesize_eta(ssf, grid)) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", theta, v.real(), v.imag());
        out << line;
    }
    return out.str();
}

}  // namespace shiftlab
