#pragma once

/** \file verify.hpp
 *  \brief Run configuration, per-theorem verification, extraction runs, instance generation and
 *         the report format shared by the CLI and the acceptance harness.
 */

#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "ensemble.hpp"
#include "matrix_io.hpp"
#include "ssf_io.hpp"

namespace shiftlab {

inline const std::vector<std::string>& theorem_ids() {
    static const std::vector<std::string> ids{"unitary-mult", "contraction-mult",      "helton",
                                              "dissipative",  "lin-unitary",           "selfadjoint-resolvent"};
    return ids;
}

struct RunConfig {
    std::string theorem = "unitary-mult";
    int dim = 3;
    int n = 2;
    int degree = 6;           ///< max |degree| of the random test functions
    int probes = 0;           ///< M; 0 resolves to max(degree, n + 2)
    int count = 20;           ///< number of test functions
    std::uint64_t seed = 0;
    int depth = 0;            ///< dilation depth; 0 resolves to M + 1
    int nodes = 64;           ///< Gauss-Legendre nodes of the remainder integral
    int theta_nodes = 4096;
    double theta_delta = 1e-3;
    double helton_radius = 0.99;
    int helton_grid = 64;
    double tol = 0.0;         ///< relative tolerance; 0 resolves to the theorem default
    double pert_norm = 0.5;   ///< operator norm of the perturbation generator; 0 gives a trivial instance
    double base_norm = 1.5;   ///< norm of H_0 (self-adjoint) or of Re L_0 (dissipative)
    double damping = 0.5;     ///< norm of -Im L_0 for dissipative instances
    std::string gauge = "eta1-lower";
    std::string out;
    std::string csv;
    int grid = 512;
    int workers = 1;
};

inline double default_tolerance(const std::string& theorem) {
    return theorem == "contraction-mult" ? 1e-6 : 1e-7;
}

/// Fills the automatic fields and checks every field. Throws ConfigError naming the field.
inline RunConfig resolve(RunConfig c) {
    if (std::find(theorem_ids().begin(), theorem_ids().end(), c.theorem) == theorem_ids().end())
        throw ConfigError("theorem must be one of unitary-mult, contraction-mult, helton, dissipative, lin-unitary, "
                          "selfadjoint-resolvent (got \"" + c.theorem + "\")");
    if (c.dim < 1 || c.dim > 12) throw ConfigError("dim must be in 1..12 (got " + std::to_string(c.dim) + ")");
    if (c.n < 2 || c.n > 6) throw ConfigError("n must be in 2..6 (got " + std::to_string(c.n) + ")");
    if (c.degree < 0) throw ConfigError("degree must be >= 0");
    if (c.probes == 0) c.probes = std::max(c.degree, c.n + 2);
    if (c.probes < c.n + 2)
        throw ConfigError("probes M must be >= n + 2 = " + std::to_string(c.n + 2) + " (got " +
                          std::to_string(c.probes) + ")");
    if (c.degree > c.probes)
        throw ConfigError("degree " + std::to_string(c.degree) + " exceeds probes M = " + std::to_string(c.probes));
    if (c.depth == 0) c.depth = c.probes + 1;
    if (c.depth < c.probes + 1)
        throw ConfigError("depth must be >= M + 1 = " + std::to_string(c.probes + 1) + " (got " +
                          std::to_string(c.depth) + ")");
    if (c.count < 1) throw ConfigError("count must be >= 1");
    if (c.nodes < 8) throw ConfigError("nodes must be >= 8");
    if (c.theta_nodes < 16) throw ConfigError("theta_nodes must be >= 16");
    if (!(c.theta_delta > 0.0 && c.theta_delta < 0.5)) throw ConfigError("theta_delta must be in (0, 0.5)");
    if (!(c.helton_radius > 0.0 && c.helton_radius < 1.0)) throw ConfigError("helton_radius must be in (0, 1)");
    if (c.helton_grid < 4) throw ConfigError("helton_grid must be >= 4");
    if (c.tol < 0.0) throw ConfigError("tol must be >= 0");
    if (c.tol == 0.0) c.tol = default_tolerance(c.theorem);
    if (c.pert_norm < 0.0 || c.pert_norm > Tolerances{}.generator_norm)
        throw ConfigError("pert_norm must be in [0, 2]");
    if (c.base_norm < 0.0 || c.base_norm > Tolerances{}.generator_norm)
        throw ConfigError("base_norm must be in [0, 2]");
    if (c.damping <= 0.0) throw ConfigError("damping must be > 0");
    if (c.gauge != "eta1-lower" && c.gauge != "distributed")
        throw ConfigError("gauge must be eta1-lower or distributed");
    if (c.grid < 1) throw ConfigError("grid must be >= 1");
    if (c.workers < 1) throw ConfigError("workers must be >= 1");
    return c;
}

inline Json config_to_json(const RunConfig& c) {
    Json j;
    j["theorem"] = c.theorem;
    j["dim"] = c.dim;
    j["n"] = c.n;
    j["degree"] = c.degree;
    j["probes"] = c.probes;
    j["count"] = c.count;
    j["seed"] = c.seed;
    j["depth"] = c.depth;
    j["nodes"] = c.nodes;
    j["theta_nodes"] = c.theta_nodes;
    j["theta_delta"] = c.theta_delta;
    j["helton_radius"] = c.helton_radius;
    j["helton_grid"] = c.helton_grid;
    j["tol"] = c.tol;
    j["pert_norm"] = c.pert_norm;
    j["base_norm"] = c.base_norm;
    j["damping"] = c.damping;
    j["gauge"] = c.gauge;
    return j;
}

/// Overlays the keys present in \p j onto \p c.
inline RunConfig config_from_json(const Json& j, RunConfig c = {}) {
    if (!j.is_object()) throw ConfigError("config document must be a JSON object");
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "theorem") c.theorem = v.get<std::string>();
            else if (key == "dim") c.dim = v.get<int>();
            else if (key == "n") c.n = v.get<int>();
            else if (key == "degree") c.degree = v.get<int>();
            else if (key == "probes") c.probes = v.get<int>();
            else if (key == "count") c.count = v.get<int>();
            else if (key == "seed") c.seed = v.get<std::uint64_t>();
            else if (key == "depth") c.depth = v.get<int>();
            else if (key == "nodes") c.nodes = v.get<int>();
            else if (key == "theta_nodes") c.theta_nodes = v.get<int>();
            else if (key == "theta_delta") c.theta_delta = v.get<double>();
            else if (key == "helton_radius") c.helton_radius = v.get<double>();
            else if (key == "helton_grid") c.helton_grid = v.get<int>();
            else if (key == "tol") c.tol = v.get<double>();
            else if (key == "pert_norm") c.pert_norm = v.get<double>();
            else if (key == "base_norm") c.base_norm = v.get<double>();
            else if (key == "damping") c.damping = v.get<double>();
            else if (key == "gauge") c.gauge = v.get<std::string>();
            else if (key == "out") c.out = v.get<std::string>();
            else if (key == "csv") c.csv = v.get<std::string>();
            else if (key == "grid") c.grid = v.get<int>();
            else if (key == "workers") c.workers = v.get<int>();
            else throw ConfigError("unknown config key \"" + key + "\"");
        }
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("config value has the wrong type: ") + e.what());
    }
    return c;
}

/** \brief Runs fn(0..count-1) on \p workers threads. Results must be written by index; the first
 *         exception by index is rethrown after all tasks finish.
 */
template <class Fn>
void parallel_for(int count, int workers, Fn fn) {
    std::vector<std::exception_ptr> errors(std::size_t(std::max(count, 0)));
    if (workers <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) {
            try {
                fn(i);
            } catch (...) {
                errors[std::size_t(i)] = std::current_exception();
            }
        }
    } else {
        std::mutex m;
        int next = 0;
        auto worker = [&] {
            for (;;) {
                int i;
                {
                    std::lock_guard<std::mutex> lock(m);
                    if (next >= count) return;
                    i = next++;
                }
                try {
                    fn(i);
                } catch (...) {
                    errors[std::size_t(i)] = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < std::min(workers, count); ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

struct FunctionResult {
    std::string descriptor;
    cplx lhs;
    cplx rhs;
    double abs_err = 0.0;
    double rel_err = 0.0;
    bool pass = false;
};

struct Check {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct VerificationReport {
    RunConfig config;
    std::vector<FunctionResult> results;
    Json diagnostics = Json::object();
    std::vector<Check> checks;

    bool pass() const {
        for (const auto& r : results)
            if (!r.pass) return false;
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    double max_rel_err() const {
        double out = 0.0;
        for (const auto& r : results) out = std::max(out, r.rel_err);
        return out;
    }

    double max_abs_err() const {
        double out = 0.0;
        for (const auto& r : results) out = std::max(out, r.abs_err);
        return out;
    }

    void add_check(std::string name, double value, double threshold) {
        checks.push_back({std::move(name), value, threshold, value <= threshold});
    }
};

/** \brief rel_err = abs_err / max(|lhs|, 1e-12). A function passes when abs_err <= tol * max(|lhs|, 1e-6),
 *         so traces that are themselves at rounding level are judged absolutely.
 */
inline FunctionResult compare(const LaurentPolynomial& f, cplx lhs, cplx rhs, double tol) {
    FunctionResult r;
    r.descriptor = f.describe();
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_err = std::abs(lhs - rhs);
    r.rel_err = r.abs_err / std::max(std::abs(lhs), 1e-12);
    r.pass = r.abs_err <= tol * std::max(std::abs(lhs), 1e-6);
    return r;
}

inline Json report_to_json(const VerificationReport& rep) {
    Json j;
    j["theorem"] = rep.config.theorem;
    j["version"] = kVersion;
    j["config"] = config_to_json(rep.config);
    Json results = Json::array();
    for (const auto& r : rep.results) {
        Json e;
        e["f_descriptor"] = r.descriptor;
        e["lhs"] = complex_to_json(r.lhs);
        e["rhs"] = complex_to_json(r.rhs);
        e["abs_err"] = r.abs_err;
        e["rel_err"] = r.rel_err;
        e["pass"] = r.pass;
        results.push_back(std::move(e));
    }
    j["results"] = std::move(results);
    j["diagnostics"] = rep.diagnostics;
    Json checks = Json::array();
    for (const auto& c : rep.checks) {
        Json e;
        e["name"] = c.name;
        e["value"] = c.value;
        e["threshold"] = c.threshold;
        e["pass"] = c.pass;
        checks.push_back(std::move(e));
    }
    j["checks"] = std::move(checks);
    j["pass"] = rep.pass();
    return j;
}

inline std::string summarize(const VerificationReport& rep) {
    int passed = 0;
    for (const auto& r : rep.results) passed += r.pass ? 1 : 0;
    std::ostringstream out;
    out << rep.config.theorem << " dim=" << rep.config.dim << " n=" << rep.config.n << " seed=" << rep.config.seed
        << ": " << passed << "/" << rep.results.size() << " functions within tol " << rep.config.tol
        << ", max rel_err " << rep.max_rel_err() << "\n";
    for (const auto& c : rep.checks)
        out << "  " << c.name << " = " << c.value << " (<= " << c.threshold << ") " << (c.pass ? "ok" : "FAIL")
            << "\n";
    for (const auto& [k, v] : rep.diagnostics.items()) out << "  " << k << " = " << v.dump() << "\n";
    out << (rep.pass() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

/** \brief f(X_1) - f(X_0) - sum_{a<n} (1/a!) d^a/ds^a f(X_s)|_0, derivatives by multilinear operator
 *         integrals on unitary paths and by the explicit power expansion on contraction paths.
 */
inline Matrix direct_remainder(const MultiplicativePath& path, const LaurentPolynomial& f, int n,
                               const Tolerances& tol = {}) {
    Matrix out = apply_function(f, path.at(1.0)) - apply_function(f, path.base());
    for (int a = 1; a <= n - 1; ++a) {
        if (path.kind() == PathBase::unitary) {
            out -= derivative_mult(path, f, a, 0.0, tol) / factorial(a);
        } else {
            for (const auto& [k, c] : f.coeffs())
                if (k != 0) out -= (c / factorial(a)) * derivative_power(path, k, a, 0.0);
        }
    }
    return out;
}

namespace detail {

inline Gauge gauge_of(const RunConfig& c) {
    return c.gauge == "distributed" ? Gauge::distributed : Gauge::lower_in_eta1;
}

/// Test functions for the run: an independent stream so the instance draw does not depend on count.
inline std::vector<LaurentPolynomial> test_functions(const RunConfig& c) {
    Ensemble fe(c.seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<LaurentPolynomial> out;
    for (int i = 0; i < c.count; ++i) out.push_back(fe.trig_polynomial(c.degree));
    return out;
}

inline double schatten_power(const Matrix& A, int n) { return std::pow(schatten_norm(A, double(n)), double(n)); }

inline void add_norm_diagnostics(VerificationReport& rep, const SpectralShiftData& ssf, const Matrix& A) {
    const double l1 = eta_l1_estimate(ssf);
    const double an = schatten_power(A, ssf.n);
    rep.diagnostics["eta_l1"] = l1;
    rep.diagnostics["schatten_norm_power"] = an;
    rep.diagnostics["schatten_ratio"] = an > 0.0 ? l1 / an : 0.0;
    rep.diagnostics["sup_ratio"] = an > 0.0 ? eta_sup_coefficient(ssf) / an : 0.0;
}

/// Largest |Tr R(z^{-m}) - conj Tr R(z^m)| over the probes.
inline double moment_asymmetry(const SpectralShiftData& ssf) {
    double out = 0.0;
    for (int m = 1; m <= ssf.probe_range; ++m)
        out = std::max(out, std::abs(ssf.probe_traces.at(-m) - std::conj(ssf.probe_traces.at(m))));
    return out;
}

inline double rel_gap(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-12); }

/// Quadrature error of the disk form, normalized by the series value.
inline double helton_error(const SpectralShiftData& ssf, const LaurentPolynomial& f, double R, int grid) {
    return rel_gap(helton_quadrature(ssf, f, R, grid), helton_series(ssf, f));
}

}  // namespace detail

inline VerificationReport run_verify(const RunConfig& raw) {
    const RunConfig c = resolve(raw);
    const Tolerances tol;
    VerificationReport rep;
    rep.config = c;
    const auto fs = detail::test_functions(c);
    rep.results.resize(fs.size());
    Ensemble ens(c.seed);
    const Index d = c.dim;
    const int n = c.n;
    const int M = c.probes;
    const Gauge gauge = detail::gauge_of(c);

    if (c.theorem == "unitary-mult" || c.theorem == "helton") {
        const auto U0 = ens.unitary(d);
        const auto A = ens.generator(d, c.pert_norm);
        const MultiplicativePath path(U0, A);
        const auto ssf = extract_mult_unitary(U0, A, n, M, gauge);
        std::vector<double> err_lo(fs.size()), err_hi(fs.size()), series_gap(fs.size());
        const bool helton = c.theorem == "helton";
        parallel_for(c.count, c.workers, [&](int i) {
            const auto& f = fs[std::size_t(i)];
            const cplx lhs = direct_remainder(path, f, n, tol).trace();
            const cplx predicted = predict_trace(ssf, f);
            if (!helton) {
                rep.results[std::size_t(i)] = compare(f, lhs, predicted, c.tol);
                return;
            }
            const cplx series = helton_series(ssf, f);
            rep.results[std::size_t(i)] = compare(f, lhs, series, c.tol);
            series_gap[std::size_t(i)] = detail::rel_gap(series, predicted);
            err_lo[std::size_t(i)] = detail::helton_error(ssf, f, c.helton_radius, c.helton_grid);
            err_hi[std::size_t(i)] =
                detail::helton_error(ssf, f, 1.0 - (1.0 - c.helton_radius) / 10.0, c.helton_grid * 4);
        });
        detail::add_norm_diagnostics(rep, ssf, A.matrix());
        rep.add_check("moment_symmetry", detail::moment_asymmetry(ssf), 1e-10);
        if (!helton) {
            // integral form of the remainder on the first test function
            const auto q = remainder_quadrature(path, fs.front(), n, c.nodes, tol);
            const Matrix direct = direct_remainder(path, fs.front(), n, tol);
            rep.add_check("integral_representation_gap", max_norm(q.matrix - direct), 1e-8);
        }
        if (helton) {
            double worst_gap = 0.0, worst_lo = 0.0, increases = 0.0;
            for (std::size_t i = 0; i < fs.size(); ++i) {
                worst_gap = std::max(worst_gap, series_gap[i]);
                worst_lo = std::max(worst_lo, err_lo[i]);
                if (!(err_hi[i] < err_lo[i]) && err_lo[i] > 1e-12) increases += 1.0;
            }
            SpectralShiftData calib;
            calib.n = 2;
            calib.probe_range = 1;
            calib.lower = {LaurentPolynomial::monomial(-1)};
            const double calib_err =
                detail::helton_error(calib, LaurentPolynomial::monomial(1), c.helton_radius, c.helton_grid);
            rep.diagnostics["quadrature_gap"] = worst_lo;
            rep.diagnostics["helton_radius"] = c.helton_radius;
            rep.add_check("series_vs_predict", worst_gap, 1e-10);
            rep.add_check("calibration_error", calib_err, 0.02);
            rep.add_check("quadrature_error_increases", increases, 0.0);
        }
    } else if (c.theorem == "contraction-mult") {
        const auto T0 = ens.contraction(d);
        const auto B = ens.generator(d, c.pert_norm);
        const MultiplicativePath path(T0, B);
        const auto ssf = extract_mult_dilated(T0, B, n, M, c.depth, tol, gauge);
        std::vector<double> gaps(fs.size()), corners(fs.size());
        parallel_for(c.count, c.workers, [&](int i) {
            const auto& f = fs[std::size_t(i)];
            const cplx lhs = direct_remainder(path, f, n, tol).trace();
            rep.results[std::size_t(i)] = compare(f, lhs, predict_trace(ssf, f), c.tol);
            const auto dr = dilated_remainder(T0, B, f, n, c.depth, tol);
            gaps[std::size_t(i)] = dr.trace_gap;
            corners[std::size_t(i)] = dr.corner_defect;
        });
        detail::add_norm_diagnostics(rep, ssf, B.matrix());
        const double gap = *std::max_element(gaps.begin(), gaps.end());
        rep.diagnostics["dilation_gap"] = gap;
        rep.diagnostics["corner_defect"] = *std::max_element(corners.begin(), corners.end());
        rep.add_check("dilation_trace_gap", gap, 1e-8);
    } else if (c.theorem == "dissipative") {
        const auto L0 = ens.dissipative(d, c.base_norm, c.damping);
        const auto B = ens.generator(d, c.pert_norm);
        const auto T0 = cayley(L0, tol);
        const auto ssf = extract_mult_contraction(T0, B, n, M, gauge);
        const auto gammas = ssf.gammas();
        ThetaOptions opt;
        opt.delta = c.theta_delta;
        opt.nodes = c.theta_nodes;
        std::vector<double> theta_gaps(fs.size());
        parallel_for(c.count, c.workers, [&](int i) {
            const auto& f = fs[std::size_t(i)];
            const cplx lhs = dissipative_remainder(L0, B, f, n, tol).trace();
            const auto exact = rhs_real_line(f, gammas, RealLineMode::exact_pullback);
            rep.results[std::size_t(i)] = compare(f, lhs, exact.value, c.tol);
            theta_gaps[std::size_t(i)] = rhs_real_line(f, gammas, RealLineMode::theta_quadrature, opt).gap;
        });
        detail::add_norm_diagnostics(rep, ssf, B.matrix());
        const double gap = *std::max_element(theta_gaps.begin(), theta_gaps.end());
        rep.diagnostics["quadrature_gap"] = gap;
        rep.add_check("theta_quadrature_gap", gap, 1e-4);
    } else if (c.theorem == "lin-unitary") {
        const auto U0 = ens.unitary(d);
        const auto A = ens.generator(d, c.pert_norm);
        const auto U1 = matrix_exp_i(A, 1.0);
        const UnitaryOperator u1(U1.matrix() * U0.matrix(), 1e-10);
        const auto ssf = extract_lin(U0, u1, n, M, tol);
        std::vector<double> residuals(fs.size());
        parallel_for(c.count, c.workers, [&](int i) {
            const auto& f = fs[std::size_t(i)];
            const auto r = remainder_lin(U0, u1, f, n, tol);
            residuals[std::size_t(i)] = r.residual;
            rep.results[std::size_t(i)] = compare(f, r.matrix.trace(), predict_trace(ssf, f), c.tol);
        });
        detail::add_norm_diagnostics(rep, ssf, u1.matrix() - U0.matrix());
        double lower = 0.0;
        for (int m = 1; m <= n - 1; ++m) lower = std::max(lower, std::abs(ssf.probe_traces.at(m)));
        rep.add_check("closed_form_residual", *std::max_element(residuals.begin(), residuals.end()), 1e-9);
        rep.add_check("low_degree_probes", lower, 1e-10);
    } else {  // selfadjoint-resolvent
        const auto [H0, V] = ens.selfadjoint_pair(d, c.base_norm, c.pert_norm);
        const auto up = selfadjoint_pair_to_unitaries(H0, V);
        const auto ssf = extract_lin(up.u0, up.u1, n, M, tol);
        const auto gammas = ssf.gammas();
        std::vector<double> cross(fs.size());
        parallel_for(c.count, c.workers, [&](int i) {
            const auto& f = fs[std::size_t(i)];
            const cplx lhs = selfadjoint_resolvent_remainder(H0, V, f, n, ChainReading::consistent, tol).trace();
            const auto exact = rhs_real_line(f, gammas, RealLineMode::exact_pullback);
            rep.results[std::size_t(i)] = compare(f, lhs, exact.value, c.tol);
            cross[std::size_t(i)] = std::abs(lhs - remainder_lin(up.u0, up.u1, f, n, tol).matrix.trace());
        });
        detail::add_norm_diagnostics(rep, ssf, up.u1.matrix() - up.u0.matrix());
        rep.diagnostics["cayley_difference_residual"] = up.difference_residual;
        rep.add_check("linear_remainder_cross_check", *std::max_element(cross.begin(), cross.end()), 1e-8);
    }
    return rep;
}

/// Spectral-shift data for the instance the same (seed, config) would verify.
inline SpectralShiftData run_extract(const RunConfig& raw) {
    const RunConfig c = resolve(raw);
    const Tolerances tol;
    Ensemble ens(c.seed);
    const Index d = c.dim;
    const Gauge gauge = detail::gauge_of(c);
    if (c.theorem == "unitary-mult" || c.theorem == "helton") {
        const auto U0 = ens.unitary(d);
        const auto A = ens.generator(d, c.pert_norm);
        return extract_mult_unitary(U0, A, c.n, c.probes, gauge);
    }
    if (c.theorem == "contraction-mult") {
        const auto T0 = ens.contraction(d);
        const auto B = ens.generator(d, c.pert_norm);
        return extract_mult_dilated(T0, B, c.n, c.probes, c.depth, tol, gauge);
    }
    if (c.theorem == "dissipative") {
        const auto L0 = ens.dissipative(d, c.base_norm, c.damping);
        const auto B = ens.generator(d, c.pert_norm);
        return extract_mult_contraction(cayley(L0, tol), B, c.n, c.probes, gauge);
    }
    if (c.theorem == "lin-unitary") {
        const auto U0 = ens.unitary(d);
        const auto A = ens.generator(d, c.pert_norm);
        const UnitaryOperator u1(matrix_exp_i(A, 1.0).matrix() * U0.matrix(), 1e-10);
        return extract_lin(U0, u1, c.n, c.probes, tol);
    }
    const auto [H0, V] = ens.selfadjoint_pair(d, c.base_norm, c.pert_norm);
    const auto up = selfadjoint_pair_to_unitaries(H0, V);
    return extract_lin(up.u0, up.u1, c.n, c.probes, tol);
}

/// Random instance of the given kind as {"kind", "dim", "seed", "matrices": {name: matrix}}.
inline Json gen_instance(InstanceKind kind, int dim, std::uint64_t seed, double norm = 1.5, double pert = 0.5,
                         double damping = 0.5) {
    if (dim < 1 || dim > 12) throw ConfigError("dim must be in 1..12 (got " + std::to_string(dim) + ")");
    Ensemble ens(seed);
    Json mats = Json::object();
    switch (kind) {
        case InstanceKind::unitary: mats["U"] = matrix_to_json(ens.unitary(dim).matrix()); break;
        case InstanceKind::selfadjoint_generator: mats["A"] = matrix_to_json(ens.generator(dim, norm).matrix()); break;
        case InstanceKind::contraction: mats["T"] = matrix_to_json(ens.contraction(dim).matrix()); break;
        case InstanceKind::dissipative:
            mats["L"] = matrix_to_json(ens.dissipative(dim, norm, damping).matrix());
            break;
        case InstanceKind::selfadjoint_pair: {
            const auto [H0, V] = ens.selfadjoint_pair(dim, norm, pert);
            mats["H0"] = matrix_to_json(H0.matrix());
            mats["V"] = matrix_to_json(V.matrix());
            break;
        }
    }
    Json out;
    out["kind"] = to_string(kind);
    out["dim"] = dim;
    out["seed"] = seed;
    out["version"] = kVersion;
    out["matrices"] = std::move(mats);
    return out;
}

}  // namespace shiftlab
