#pragma once

/** \file cayley.hpp
 *  \brief Cayley transforms between dissipative and contractive matrices and between
 *         self-adjoint and unitary ones, divided differences of pulled-back symbols on the
 *         real line, and the real-line form of the spectral-shift pairing.
 *
 *  Throughout, c(lambda) = (lambda + i)/(lambda - i) and psi(lambda) = f(c(lambda)).
 */

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <map>
#include <vector>

#include "paths.hpp"

namespace shiftlab {

/// Largest eigenvalue of (L - L*)/(2i), clipped at zero.
inline double dissipative_defect(const Matrix& L) {
    require_square(L, "dissipative operator");
    const Matrix im = (L - L.adjoint()) / (2.0 * kI);
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (im + im.adjoint()), Eigen::EigenvaluesOnly);
    return std::max(0.0, es.eigenvalues().maxCoeff());
}

/** \brief Matrix with Im<L x, x> <= 0 for all x (within tolerance). */
class DissipativeOperator {
public:
    explicit DissipativeOperator(Matrix m, double tol = Tolerances{}.class_tol) : m_(std::move(m)), tol_(tol) {
        const double defect = dissipative_defect(m_);
        if (!(defect <= tol_))
            throw ClassViolation("not dissipative: Im part has eigenvalue " + std::to_string(defect));
    }
    const Matrix& matrix() const { return m_; }
    double tolerance() const { return tol_; }
    Index dim() const { return m_.rows(); }

private:
    Matrix m_;
    double tol_;
};

namespace detail {

inline Matrix checked_inverse(const Matrix& M, const std::string& what, bool resolvent) {
    Eigen::FullPivLU<Matrix> lu(M);
    lu.setThreshold(1e-13);
    if (!lu.isInvertible()) {
        if (resolvent) throw SingularResolvent(what + " is singular");
        throw SingularFactor(what + " is singular");
    }
    return lu.inverse();
}

inline double distance_of_spectrum_from_one(const Matrix& T) {
    Eigen::ComplexEigenSolver<Matrix> es(T, false);
    double best = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < T.rows(); ++j) best = std::min(best, std::abs(es.eigenvalues()(j) - 1.0));
    return best;
}

}  // namespace detail

/// (H + iI)(H - iI)^{-1} for any square H with H - iI invertible.
inline Matrix cayley_matrix(const Matrix& H) {
    const Matrix I = identity(H.rows());
    return (H + kI * I) * detail::checked_inverse(H - kI * I, "L - iI", true);
}

/// T = (L + iI)(L - iI)^{-1}; 1 must stay outside the spectrum of T.
inline ContractionOperator cayley(const DissipativeOperator& L, const Tolerances& tol = {}) {
    Matrix T = cayley_matrix(L.matrix());
    const double gap = detail::distance_of_spectrum_from_one(T);
    if (gap < tol.eigenvalue_margin) throw OnePointSpectrum("distance of spec(T) from 1 is " + std::to_string(gap));
    return ContractionOperator(std::move(T), 1e-10);
}

/// L = i(T + I)(T - I)^{-1}.
inline Matrix inverse_cayley(const ContractionOperator& T, const Tolerances& tol = {}) {
    const double gap = detail::distance_of_spectrum_from_one(T.matrix());
    if (gap < tol.eigenvalue_margin) throw OnePointSpectrum("distance of spec(T) from 1 is " + std::to_string(gap));
    const Matrix I = identity(T.dim());
    return kI * (T.matrix() + I) * detail::checked_inverse(T.matrix() - I, "T - I", false);
}

struct UnitaryPair {
    UnitaryOperator u0;
    UnitaryOperator u1;
    double difference_residual;  ///< ||U1 - U0 + 2i (H1 - iI)^{-1} V (H0 - iI)^{-1}||_max
};

/// U_j = (H_j + iI)(H_j - iI)^{-1} with H_1 = H_0 + V.
inline UnitaryPair selfadjoint_pair_to_unitaries(const SelfAdjointOperator& H0, const SelfAdjointOperator& V) {
    require_same_dim(H0.matrix(), V.matrix(), "selfadjoint_pair_to_unitaries");
    const Matrix H1 = H0.matrix() + V.matrix();
    const Matrix I = identity(H0.dim());
    const Matrix R0 = detail::checked_inverse(H0.matrix() - kI * I, "H0 - iI", true);
    const Matrix R1 = detail::checked_inverse(H1 - kI * I, "H1 - iI", true);
    UnitaryOperator u0((H0.matrix() + kI * I) * R0, 1e-10);
    UnitaryOperator u1((H1 + kI * I) * R1, 1e-10);
    const double residual = max_norm(u1.matrix() - u0.matrix() + 2.0 * kI * R1 * V.matrix() * R0);
    return {std::move(u0), std::move(u1), residual};
}

/** \brief How the perturbation chain of the resolvent formula is read.
 *
 *  \c consistent: with R_j = (H_j - iI)^{-1}, X = (I - V R_1) V R_0 and Y = (I - V R_1) V,
 *  V_{j_l} = X^{j_l - j_{l-1} - 1} Y. This is the chain produced by expanding the linear-path
 *  remainder of the Cayley transforms, and the one the verification uses.
 *  \c literal: ((I - V(H_1 - iI))^{-1} V R_0)^{j_l - j_{l-1}} (I - V(H_1 - iI))^{-1} V, kept for
 *  comparison.
 */
enum class ChainReading { consistent, literal };

inline std::vector<Matrix> resolvent_chain(const SelfAdjointOperator& H0, const SelfAdjointOperator& V,
                                           const std::vector<int>& js,
                                           ChainReading reading = ChainReading::consistent) {
    require_same_dim(H0.matrix(), V.matrix(), "resolvent_chain");
    for (std::size_t l = 0; l < js.size(); ++l)
        if (js[l] < 1 || (l > 0 && js[l] <= js[l - 1]))
            throw InputError("resolvent_chain indices must be strictly increasing and >= 1");
    const Index d = H0.dim();
    const Matrix I = identity(d);
    const Matrix& v = V.matrix();
    const Matrix H1 = H0.matrix() + v;
    const Matrix R0 = detail::checked_inverse(H0.matrix() - kI * I, "H0 - iI", true);
    Matrix X, Y;
    int shift = 0;
    if (reading == ChainReading::consistent) {
        const Matrix R1 = detail::checked_inverse(H1 - kI * I, "H1 - iI", true);
        const Matrix F = I - v * R1;
        X = F * v * R0;
        Y = F * v;
        shift = -1;
    } else {
        const Matrix G = detail::checked_inverse(I - v * (H1 - kI * I), "I - V(H1 - iI)", false);
        X = G * v * R0;
        Y = G * v;
    }
    std::vector<Matrix> out;
    int prev = 0;
    for (int j : js) {
        out.push_back(matrix_power(X, j - prev + shift) * Y);
        prev = j;
    }
    return out;
}

/** \brief psi = f o c split into partial fractions:
 *  constant + sum_p minus[p] (lambda - i)^{-p} + sum_p plus[p] (lambda + i)^{-p}.
 */
struct CayleyPullback {
    cplx constant = 0.0;
    LaurentPolynomial at_minus_i;  ///< coefficients of (lambda - i)^{-p} at degree -p
    LaurentPolynomial at_plus_i;   ///< coefficients of (lambda + i)^{-p} at degree -p
};

inline CayleyPullback cayley_pullback(const LaurentPolynomial& f) {
    // c^m = (1 + 2i/(lambda - i))^m for m >= 0 and (1 - 2i/(lambda + i))^{|m|} for m < 0.
    CayleyPullback out;
    for (const auto& [m, a] : f.coeffs()) {
        const int q = std::abs(m);
        const cplx base = m >= 0 ? 2.0 * kI : -2.0 * kI;
        for (int p = 0; p <= q; ++p) {
            const cplx term = a * binomial(q, p) * ipow(base, p);
            if (p == 0) out.constant += term;
            else if (m >= 0) out.at_minus_i.add(-p, term);
            else out.at_plus_i.add(-p, term);
        }
    }
    return out;
}

inline cplx cayley_point(double lambda) { return (lambda + kI) / (lambda - kI); }

/// psi(lambda) = f((lambda + i)/(lambda - i)).
inline cplx psi_value(const LaurentPolynomial& f, double lambda) { return f(cayley_point(lambda)); }

/// psi^{[k]} at real points, exact for coincident points.
inline cplx pullback_divided_difference(const CayleyPullback& pb, std::span<const cplx> lambdas) {
    const std::size_t n = lambdas.size();
    std::vector<cplx> zm(n), zp(n);
    for (std::size_t j = 0; j < n; ++j) {
        zm[j] = lambdas[j] - kI;
        zp[j] = lambdas[j] + kI;
    }
    cplx acc = n == 1 ? pb.constant : cplx(0.0);
    acc += laurent_divided_difference<double>(pb.at_minus_i, std::span<const cplx>(zm));
    acc += laurent_divided_difference<double>(pb.at_plus_i, std::span<const cplx>(zp));
    return acc;
}

inline MoiSymbol pullback_symbol(const LaurentPolynomial& f, int k) {
    return {k + 1, [pb = cayley_pullback(f)](std::span<const cplx> z) { return pullback_divided_difference(pb, z); }};
}

/// All strictly increasing tuples drawn from {1, .., top} of length k.
inline std::vector<std::vector<int>> increasing_tuples(int top, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (int(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int j = start; j <= top; ++j) {
            cur.push_back(j);
            rec(j + 1);
            cur.pop_back();
        }
    };
    rec(1);
    return out;
}

/** \brief psi(H1) - psi(H0) - sum_{k<n} sum_{j_1<..<j_k<=n-1} T^{H0..H0}_{psi^{[k]}}(V_{j_1}, .., V_{j_k}). */
inline Matrix selfadjoint_resolvent_remainder(const SelfAdjointOperator& H0, const SelfAdjointOperator& V,
                                              const LaurentPolynomial& f, int n,
                                              ChainReading reading = ChainReading::consistent,
                                              const Tolerances& tol = {}) {
    if (n < 2) throw InputError("remainder order must be >= 2");
    const Matrix H1 = H0.matrix() + V.matrix();
    auto psi = [&f](double x) { return psi_value(f, x); };
    Matrix out = hermitian_apply(H1, psi) - hermitian_apply(H0.matrix(), psi);
    const auto D0 = spectral_decompose(H0.matrix(), tol.cluster_tol, tol.normal_tol);
    for (int k = 1; k <= n - 1; ++k) {
        const auto sym = pullback_symbol(f, k);
        DecompositionList slots(std::size_t(k) + 1, &D0);
        for (const auto& js : increasing_tuples(n - 1, k))
            out -= moi_apply(sym, slots, resolvent_chain(H0, V, js, reading), tol.max_terms).matrix;
    }
    return out;
}

/** \brief Left side of the dissipative formula built from L_0 and B.
 *
 *  T_0 = cayley(L_0), T_1 = e^{iB} T_0, L_1 = inverse_cayley(T_1); psi(L) uses the powers of
 *  cayley(L) and of its adjoint. The subtracted sum runs over every coefficient a_k, the
 *  bracketed power expression taken for |k| and conjugated for k < 0.
 */
inline Matrix dissipative_remainder(const DissipativeOperator& L0, const SelfAdjointOperator& B,
                                    const LaurentPolynomial& f, int n, const Tolerances& tol = {}) {
    if (n < 2) throw InputError("remainder order must be >= 2");
    const auto T0 = cayley(L0, tol);
    const Matrix T1m = exp_i(B.matrix(), 1.0) * T0.matrix();
    const Matrix L1 = inverse_cayley(ContractionOperator(T1m, 1e-10), tol);
    const Matrix C0 = cayley_matrix(L0.matrix());
    const Matrix C1 = cayley_matrix(L1);
    Matrix out = apply_function(f, C1) - apply_function(f, C0);
    const MultiplicativePath path(ContractionOperator(C0, 1e-10), B);
    for (const auto& [k, a] : f.coeffs()) {
        if (k == 0) continue;
        for (int l = 1; l <= n - 1; ++l) out -= (a / factorial(l)) * derivative_power(path, k, l, 0.0);
    }
    return out;
}

/** \brief Sum_b g_b(c) y^b with y = lambda - i and c = (lambda + i)/(lambda - i).
 *
 *  Differentiation in lambda stays inside this form: d/dlambda [g(c) y^b] =
 *  -2i g'(c) y^{b-2} + b g(c) y^{b-1}. Like powers of y are combined exactly, so the
 *  cancellations of the lambda-derivatives happen in the coefficients, not in floating point.
 */
class CayleyExpansion {
public:
    using Map = std::map<int, LaurentPolynomial>;

    static CayleyExpansion of(const LaurentPolynomial& g, int b = 0) {
        CayleyExpansion e;
        e.add(b, g);
        return e;
    }

    void add(int b, const LaurentPolynomial& g) {
        auto& slot = terms_[b];
        slot += g;
        if (slot.empty()) terms_.erase(b);
    }

    CayleyExpansion d_dlambda() const {
        CayleyExpansion out;
        for (const auto& [b, g] : terms_) {
            out.add(b - 2, derivative(g, 1) * cplx(0.0, -2.0));
            if (b != 0) out.add(b - 1, g * cplx(double(b), 0.0));
        }
        return out;
    }

    CayleyExpansion times_y(int p) const {
        CayleyExpansion out;
        for (const auto& [b, g] : terms_) out.add(b + p, g);
        return out;
    }

    CayleyExpansion times(const LaurentPolynomial& h) const {
        CayleyExpansion out;
        for (const auto& [b, g] : terms_) out.add(b, g * h);
        return out;
    }

    CayleyExpansion scaled(cplx s) const {
        CayleyExpansion out;
        for (const auto& [b, g] : terms_) out.add(b, g * s);
        return out;
    }

    CayleyExpansion operator+(const CayleyExpansion& o) const {
        CayleyExpansion out = *this;
        for (const auto& [b, g] : o.terms_) out.add(b, g);
        return out;
    }

    cplx evaluate(cplx c, cplx y) const {
        cplx acc = 0.0;
        for (const auto& [b, g] : terms_) acc += g(c) * ipow(y, b);
        return acc;
    }

    const Map& terms() const { return terms_; }

private:
    Map terms_;
};

/// gamma_k(lambda) = (lambda - i)^{-2} eta_k((lambda + i)/(lambda - i)).
struct GammaDensity {
    int k = 1;
    LaurentPolynomial eta;

    cplx operator()(double lambda) const {
        const cplx y = lambda - kI;
        return eta(cayley_point(lambda)) / (y * y);
    }
};

/** \brief Integrand of the real-line pairing as an expansion in (c, y):
 *  sum_k (i/2)^{k-1} (lambda - i)^k D^{k-1}((lambda - i)^k psi') gamma_k.
 */
inline CayleyExpansion real_line_integrand(const LaurentPolynomial& f, const std::vector<GammaDensity>& gammas) {
    const CayleyExpansion dpsi = CayleyExpansion::of(derivative(f, 1), -2).scaled(cplx(0.0, -2.0));
    CayleyExpansion total;
    for (const auto& g : gammas) {
        if (g.eta.empty()) continue;
        CayleyExpansion e = dpsi.times_y(g.k);
        for (int j = 0; j < g.k - 1; ++j) e = e.d_dlambda();
        e = e.times_y(g.k - 2).times(g.eta);
        total = total + e.scaled(ipow(cplx(0.0, 0.5), g.k - 1));
    }
    return total;
}

enum class RealLineMode { exact_pullback, theta_quadrature };

struct RealLineRhs {
    cplx value;   ///< value in the requested mode
    cplx exact;   ///< circle-side value sum_k int f^{(k)} eta_k dz
    double gap;   ///< |value - exact|
};

struct ThetaOptions {
    double delta = 1e-3;  ///< half-width of the excluded arc around z = 1
    int nodes = 4096;
    int order = 16;       ///< Gauss-Legendre points per panel
};

/** \brief int over theta in (delta, 2pi - delta) of the real-line integrand at lambda(theta),
 *         times lambda'(theta), with lambda(theta) = i(e^{i theta} + 1)/(e^{i theta} - 1).
 *
 *  Increasing theta runs the circle counter-clockwise, which is decreasing lambda.
 */
inline cplx theta_quadrature(const CayleyExpansion& integrand, const ThetaOptions& opt) {
    const int panels = std::max(1, opt.nodes / opt.order);
    const auto rule = composite_gauss_legendre(panels, opt.order, opt.delta, 2.0 * kPi - opt.delta);
    cplx acc = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const cplx w = std::exp(kI * rule.nodes[j]);
        const cplx y = 2.0 * kI / (w - 1.0);
        const cplx dlambda = 2.0 * w / ((w - 1.0) * (w - 1.0));
        acc += rule.weights[j] * integrand.evaluate(w, y) * dlambda;
    }
    return acc;
}

inline RealLineRhs rhs_real_line(const LaurentPolynomial& f, const std::vector<GammaDensity>& gammas,
                                 RealLineMode mode, const ThetaOptions& opt = {}) {
    cplx exact = 0.0;
    for (const auto& g : gammas) exact += contour_pair(derivative(f, g.k), g.eta);
    if (mode == RealLineMode::exact_pullback) return {exact, exact, 0.0};
    const auto integrand = real_line_integrand(f, gammas);
    const cplx value = theta_quadrature(integrand, opt);
    ThetaOptions wider = opt;
    wider.delta = 2.0 * opt.delta;
    const double gap = std::abs(value - exact);
    const double wider_gap = std::abs(theta_quadrature(integrand, wider) - exact);
    if (gap > wider_gap && gap > 1e-12 * (1.0 + std::abs(exact)))
        throw QuadratureDivergence("theta-sweep gap " + std::to_string(gap) + " at delta " +
                                   std::to_string(opt.delta) + " exceeds " + std::to_string(wider_gap) +
                                   " at delta " + std::to_string(wider.delta));
    return {value, exact, gap};
}

}  // namespace shiftlab
