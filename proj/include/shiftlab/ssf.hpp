#pragma once

/** \file ssf.hpp
 *  \brief Spectral-shift data from monomial probes: extraction, gauges, trace prediction,
 *         the disk (Helton-type) forms and norm diagnostics.
 *
 *  Probe identity: for f = z^m, int f^{(k)} eta dz = 2 pi i m(m-1)..(m-k+1) \hat eta(k - m - 1).
 */

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cayley.hpp"
#include "dilation.hpp"

namespace shiftlab {

enum class ShiftKind { mult_unitary, mult_contraction, linear };

inline std::string to_string(ShiftKind k) {
    switch (k) {
        case ShiftKind::mult_unitary: return "mult-unitary";
        case ShiftKind::mult_contraction: return "mult-contraction";
        case ShiftKind::linear: return "linear";
    }
    return "?";
}

/** \brief How probe mass of degrees 1..n-1 is distributed among eta_1..eta_{n-1}. */
enum class Gauge {
    lower_in_eta1,  ///< eta_1 = sum_m c_m z^{-m}, eta_2..eta_{n-1} = 0
    distributed     ///< eta_k = Tr R(z^k)/(2 pi i k!) z^{-1}
};

inline std::string to_string(Gauge g) { return g == Gauge::lower_in_eta1 ? "eta1-lower" : "distributed"; }

struct SpectralShiftData {
    int n = 2;
    ShiftKind kind = ShiftKind::mult_unitary;
    Gauge gauge = Gauge::lower_in_eta1;
    int probe_range = 0;                 ///< M: probes z^m for |m| <= M
    std::map<int, cplx> hat_eta_n;       ///< q -> \hat eta_n(q); q in {0..n-1} is gauged to zero
    std::vector<LaurentPolynomial> lower; ///< eta_1..eta_{n-1}; empty for the linear kind
    std::map<int, cplx> probe_traces;    ///< m -> Tr R(z^m)

    LaurentPolynomial eta_n() const {
        LaurentPolynomial out;
        for (const auto& [q, c] : hat_eta_n) out.set(q, c);
        return out;
    }

    /// eta_k for 1 <= k <= n.
    LaurentPolynomial eta(int k) const {
        if (k == n) return eta_n();
        if (k < 1 || k > n) throw InputError("eta index out of range");
        return std::size_t(k - 1) < lower.size() ? lower[std::size_t(k - 1)] : LaurentPolynomial{};
    }

    /// c_1..c_{n-1} of eta_1 = sum c_m z^{-m}; empty for the linear kind.
    std::vector<cplx> eta1_coeffs() const {
        std::vector<cplx> out;
        if (kind == ShiftKind::linear) return out;
        const LaurentPolynomial e1 = eta(1);
        for (int m = 1; m <= n - 1; ++m) out.push_back(e1.coeff(-m));
        return out;
    }

    std::vector<GammaDensity> gammas() const {
        std::vector<GammaDensity> out;
        for (int k = 1; k <= n; ++k) {
            LaurentPolynomial e = eta(k);
            if (!e.empty()) out.push_back({k, std::move(e)});
        }
        return out;
    }
};

/** \brief Solve the probe moments for eta.
 *
 *  m >= n or m <= -1: \hat eta_n(n-m-1) = Tr R(z^m) / (2 pi i (m)_n).
 *  1 <= m <= n-1: mass goes to the lower etas according to the gauge (multiplicative kinds) or is
 *  only recorded (linear kind).
 */
inline SpectralShiftData extract_from_probes(int n, int M, ShiftKind kind, const std::function<cplx(int)>& trace,
                                             Gauge gauge = Gauge::lower_in_eta1) {
    if (n < 2) throw ConfigError("order n must be >= 2");
    if (M < n + 2) throw ConfigError("probe range M must be >= n + 2");
    SpectralShiftData out;
    out.n = n;
    out.kind = kind;
    out.gauge = gauge;
    out.probe_range = M;
    for (int m = -M; m <= M; ++m) out.probe_traces[m] = trace(m);
    const cplx two_pi_i = 2.0 * kPi * kI;
    for (int m = -M; m <= M; ++m) {
        if (m >= 0 && m <= n - 1) continue;
        const double ff = falling_factorial(m, n);
        if (ff == 0.0) throw ZeroDenominator("falling factorial vanished at m = " + std::to_string(m));
        out.hat_eta_n[n - m - 1] = out.probe_traces[m] / (two_pi_i * ff);
    }
    if (kind != ShiftKind::linear) {
        out.lower.assign(std::size_t(n - 1), LaurentPolynomial{});
        for (int m = 1; m <= n - 1; ++m) {
            const cplx t = out.probe_traces[m];
            if (gauge == Gauge::lower_in_eta1) out.lower[0].add(-m, t / (two_pi_i * double(m)));
            else out.lower[std::size_t(m - 1)].add(-1, t / (two_pi_i * factorial(m)));
        }
    }
    return out;
}

inline SpectralShiftData extract_mult_unitary(const UnitaryOperator& U0, const SelfAdjointOperator& A, int n, int M,
                                              Gauge gauge = Gauge::lower_in_eta1) {
    if (M < n + 2) throw ConfigError("probe range M must be >= n + 2");
    const MonomialRemainders table(MultiplicativePath(U0, A), n, M);
    return extract_from_probes(n, M, ShiftKind::mult_unitary, [&](int m) { return table.monomial(m).trace(); }, gauge);
}

inline SpectralShiftData extract_mult_contraction(const ContractionOperator& T0, const SelfAdjointOperator& B, int n,
                                                  int M, Gauge gauge = Gauge::lower_in_eta1) {
    if (M < n + 2) throw ConfigError("probe range M must be >= n + 2");
    const MonomialRemainders table(MultiplicativePath(T0, B), n, M);
    return extract_from_probes(n, M, ShiftKind::mult_contraction, [&](int m) { return table.monomial(m).trace(); },
                               gauge);
}

/// Contraction probes taken on the dilation space: block traces of the dilated remainders.
inline SpectralShiftData extract_mult_dilated(const ContractionOperator& T0, const SelfAdjointOperator& B, int n, int M,
                                              int depth, const Tolerances& tol = {},
                                              Gauge gauge = Gauge::lower_in_eta1) {
    if (M < n + 2) throw ConfigError("probe range M must be >= n + 2");
    if (depth < M + 1)
        throw DepthTooSmall("depth " + std::to_string(depth) + " < probe range + 1 = " + std::to_string(M + 1));
    const auto dp = dilate_path(T0, B, depth, tol);
    const MonomialRemainders table(dp.path, n, M);
    return extract_from_probes(
        n, M, ShiftKind::mult_contraction,
        [&](int m) {
            const auto bt = block_trace(table.monomial(m), dp.dilation);
            return bt.top + bt.middle + bt.bottom;
        },
        gauge);
}

inline SpectralShiftData extract_lin(const UnitaryOperator& U0, const UnitaryOperator& U1, int n, int M,
                                     const Tolerances& tol = {}) {
    if (M < n + 2) throw ConfigError("probe range M must be >= n + 2");
    return extract_from_probes(n, M, ShiftKind::linear, [&](int m) {
        return remainder_lin(U0, U1, LaurentPolynomial::monomial(m), n, tol).matrix.trace();
    });
}

inline void require_probe_support(const SpectralShiftData& ssf, const LaurentPolynomial& f) {
    if (f.max_abs_degree() > ssf.probe_range)
        throw SupportExceedsProbes("function degree " + std::to_string(f.max_abs_degree()) + " exceeds probe range " +
                                   std::to_string(ssf.probe_range));
}

/// sum_k int f^{(k)} eta_k dz.
inline cplx predict_trace(const SpectralShiftData& ssf, const LaurentPolynomial& f) {
    require_probe_support(ssf, f);
    cplx acc = 0.0;
    for (int k = 1; k <= ssf.n; ++k) {
        const LaurentPolynomial e = ssf.eta(k);
        if (!e.empty()) acc += contour_pair(derivative(f, k), e);
    }
    return acc;
}

/// sum_k 2 pi i sum_l l \hat{f^{(k-1)}}(l) \hat eta_k(-l).
inline cplx helton_series(const SpectralShiftData& ssf, const LaurentPolynomial& f) {
    require_probe_support(ssf, f);
    cplx acc = 0.0;
    for (int k = 1; k <= ssf.n; ++k) {
        const LaurentPolynomial e = ssf.eta(k);
        if (e.empty()) continue;
        const LaurentPolynomial g = derivative(f, k - 1);
        for (const auto& [l, c] : g.coeffs()) acc += double(l) * c * e.coeff(-l);
    }
    return 2.0 * kPi * kI * acc;
}

/** \brief Disk integral over |z| <= R of d eta~/dz d f~/dzbar - d f~/dz d eta~/dzbar with
 *         dz^dzbar = -2i * scale * dx dy.
 *
 *  Polar tensor grid: Gauss-Legendre in r, uniform in the angle.
 */
inline cplx helton_quadrature(const SpectralShiftData& ssf, const LaurentPolynomial& f, double R, int grid,
                              double scale = Tolerances{}.helton_scale) {
    if (!(R > 0.0 && R < 1.0)) throw InputError("disk radius must lie in (0, 1)");
    if (grid < 4) throw InputError("disk grid must have at least 4 points per direction");
    require_probe_support(ssf, f);
    const auto radial = gauss_legendre(grid, 0.0, R);
    const int angular = 2 * grid;
    std::vector<std::pair<LaurentPolynomial, LaurentPolynomial>> pairs;
    for (int k = 1; k <= ssf.n; ++k) {
        LaurentPolynomial e = ssf.eta(k);
        if (!e.empty()) pairs.emplace_back(std::move(e), derivative(f, k - 1));
    }
    cplx acc = 0.0;
    for (std::size_t a = 0; a < radial.nodes.size(); ++a) {
        const double r = radial.nodes[a];
        cplx ring = 0.0;
        for (int b = 0; b < angular; ++b) {
            const DiskPoint p(std::polar(r, 2.0 * kPi * b / angular));
            for (const auto& [e, g] : pairs) {
                const auto pe = poisson_eval(e, p);
                const auto pg = poisson_eval(g, p);
                ring += pe.d_dz * pg.d_dzbar - pg.d_dz * pe.d_dzbar;
            }
        }
        acc += radial.weights[a] * r * ring * (2.0 * kPi / angular);
    }
    return -2.0 * kI * scale * acc;
}

/// eta_n(e^{i theta_j}) on the uniform grid theta_j = 2 pi j / samples.
inline std::vector<std::pair<double, cplx>> synthesize_eta(const SpectralShiftData& ssf, int samples) {
    if (samples < 1) throw InputError("synthesis grid must be positive");
    const LaurentPolynomial e = ssf.eta_n();
    std::vector<std::pair<double, cplx>> out;
    out.reserve(std::size_t(samples));
    for (int j = 0; j < samples; ++j) {
        const double theta = 2.0 * kPi * j / samples;
        out.emplace_back(theta, e(std::exp(kI * theta)));
    }
    return out;
}

/// ||eta_n||_1 with respect to normalized arc length, by the uniform rule on \p samples points.
inline double eta_l1_estimate(const SpectralShiftData& ssf, int samples = 4096) {
    double acc = 0.0;
    for (const auto& [theta, v] : synthesize_eta(ssf, samples)) acc += std::abs(v);
    return acc / samples;
}

inline double eta_sup_coefficient(const SpectralShiftData& ssf) {
    double out = 0.0;
    for (const auto& [q, c] : ssf.hat_eta_n) out = std::max(out, std::abs(c));
    return out;
}

/** \brief Refit eta_1 against probe traces from another route and measure mass outside
 *         degrees -(n-1)..-1.
 *
 *  With eta_n fixed from \p ssf, every probe m gives 2 pi i m \hat eta_1(-m) = t(m) - int (z^m)^{(n)} eta_n dz.
 *  The minimum-norm least-squares solution over degrees -window..window is returned through the
 *  largest off-structure coefficient.
 */
inline double eta_structure_defect(const SpectralShiftData& ssf, const std::map<int, cplx>& other_traces, int window) {
    if (ssf.kind == ShiftKind::linear) throw InputError("eta_1 is absent for the linear kind");
    const int M = ssf.probe_range;
    const int unknowns = 2 * window + 1;
    const int rows = 2 * M + 1;
    Matrix A = Matrix::Zero(rows, unknowns);
    Vector rhs(rows);
    const LaurentPolynomial en = ssf.eta_n();
    for (int m = -M; m <= M; ++m) {
        const int row = m + M;
        const int q = -m;
        if (std::abs(q) <= window) A(row, q + window) = 2.0 * kPi * kI * double(m);
        auto it = other_traces.find(m);
        if (it == other_traces.end()) throw InputError("missing probe trace for m = " + std::to_string(m));
        rhs(row) = it->second - contour_pair(derivative(LaurentPolynomial::monomial(m), ssf.n), en);
    }
    const Vector e = A.completeOrthogonalDecomposition().solve(rhs);
    double defect = 0.0;
    for (int q = -window; q <= window; ++q)
        if (!(q <= -1 && q >= -(ssf.n - 1))) defect = std::max(defect, std::abs(e(q + window)));
    return defect;
}

}  // namespace shiftlab
