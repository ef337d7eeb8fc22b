#pragma once

/** \file paths.hpp
 *  \brief Multiplicative paths X_s = e^{isG} X_0, their derivatives, Taylor remainders along
 *         multiplicative and linear paths, and the integral form of the remainder.
 */

#include <functional>
#include <map>
#include <vector>

#include "moi.hpp"
#include "quadrature.hpp"

namespace shiftlab {

inline constexpr int kMaxCompositionOrder = 8;

enum class PathBase { unitary, contraction };

/** \brief s -> e^{isG} X_0 with X_0 unitary or a contraction and G self-adjoint. */
class MultiplicativePath {
public:
    MultiplicativePath(const UnitaryOperator& U0, const SelfAdjointOperator& A)
        : base_(U0.matrix()), generator_(A.matrix()), kind_(PathBase::unitary) {
        require_same_dim(base_, generator_, "path base and generator");
    }
    MultiplicativePath(const ContractionOperator& T0, const SelfAdjointOperator& B)
        : base_(T0.matrix()), generator_(B.matrix()), kind_(PathBase::contraction) {
        require_same_dim(base_, generator_, "path base and generator");
    }

    /// Path over an arbitrary square base (e.g. a truncated dilation); only G is checked.
    static MultiplicativePath unchecked(Matrix X0, const SelfAdjointOperator& G, PathBase kind) {
        return MultiplicativePath(std::move(X0), G.matrix(), kind);
    }

    const Matrix& base() const { return base_; }
    const Matrix& generator() const { return generator_; }
    PathBase kind() const { return kind_; }
    Index dim() const { return base_.rows(); }

    Matrix at(double s) const { return s == 0.0 ? base_ : Matrix(exp_i(generator_, s) * base_); }

private:
    MultiplicativePath(Matrix X0, Matrix G, PathBase kind)
        : base_(std::move(X0)), generator_(std::move(G)), kind_(kind) {
        require_square(base_, "path base");
        require_same_dim(base_, generator_, "path base and generator");
    }

    Matrix base_;
    Matrix generator_;
    PathBase kind_;
};

inline double factorial(int n) {
    double out = 1.0;
    for (int j = 2; j <= n; ++j) out *= j;
    return out;
}

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    return factorial(n) / (factorial(k) * factorial(n - k));
}

/// Ordered tuples (l_1..l_r) of positive integers summing to n.
inline std::vector<std::vector<int>> compositions(int n) {
    if (n > kMaxCompositionOrder)
        throw PartitionOverflow("derivative order " + std::to_string(n) + " exceeds " +
                                std::to_string(kMaxCompositionOrder));
    std::vector<std::vector<int>> out;
    if (n < 1) return out;
    // Bit j of the mask marks a cut after position j+1.
    for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
        std::vector<int> parts;
        int run = 1;
        for (int j = 0; j < n - 1; ++j) {
            if (mask & (1u << j)) {
                parts.push_back(run);
                run = 1;
            } else {
                ++run;
            }
        }
        parts.push_back(run);
        out.push_back(std::move(parts));
    }
    return out;
}

/// n! / (l_1! ... l_r!).
inline double multinomial(int n, const std::vector<int>& parts) {
    double out = factorial(n);
    for (int l : parts) out /= factorial(l);
    return out;
}

/** \brief d^n/dt^n at t = s of f(U_t) along a unitary path, as a sum of multilinear operator integrals. */
inline Matrix derivative_mult(const MultiplicativePath& path, const LaurentPolynomial& f, int n, double s,
                              const Tolerances& tol = {}) {
    if (path.kind() != PathBase::unitary) throw InputError("derivative_mult needs a unitary path");
    if (n < 1) throw InputError("derivative order must be >= 1");
    const auto comps = compositions(n);
    const Matrix Us = path.at(s);
    const auto D = spectral_decompose(Us, tol.cluster_tol, tol.normal_tol);
    const auto Apow = power_table(path.generator(), n);
    Matrix out = Matrix::Zero(path.dim(), path.dim());
    for (const auto& parts : comps) {
        const int r = int(parts.size());
        std::vector<Matrix> V;
        for (int l : parts) V.push_back(Apow[std::size_t(l)] * Us);
        DecompositionList slots(std::size_t(r) + 1, &D);
        out += multinomial(n, parts) * moi_apply(divided_difference_symbol(f, r), slots, V, tol.max_terms).matrix;
    }
    return ipow(kI, n) * out;
}

/** \brief d^n/dt^n at t = s of X_t^k by the explicit composition sum.
 *
 *  sum_r sum_{l_1+..+l_r=n} n!/(l_1!..l_r!) sum_{a_0+..+a_r=|k|, a_0>=0, a_i>=1}
 *  X^{a_0} (iG)^{l_1} X^{a_1} ... (iG)^{l_r} X^{a_r}; adjoint of the |k| result for k < 0.
 */
inline Matrix derivative_power(const MultiplicativePath& path, int k, int n, double s) {
    if (n < 0) throw InputError("derivative order must be >= 0");
    if (k < 0) return derivative_power(path, -k, n, s).adjoint();
    const Matrix X = path.at(s);
    if (n == 0) return matrix_power(X, k);
    const auto comps = compositions(n);
    const auto Xp = power_table(X, k);
    const auto Gp = power_table(Matrix(kI * path.generator()), n);
    const Index d = path.dim();
    Matrix out = Matrix::Zero(d, d);
    for (const auto& parts : comps) {
        const int r = int(parts.size());
        if (r > k) continue;
        Matrix sum = Matrix::Zero(d, d);
        // acc holds X^{a_0} (iG)^{l_1} X^{a_1} ... (iG)^{l_j}; the next exponent a_j is chosen here.
        std::function<void(int, int, const Matrix&)> walk = [&](int j, int remaining, const Matrix& acc) {
            if (j == r) {
                sum += acc * Xp[std::size_t(remaining)];
                return;
            }
            const int lo = (j == 0) ? 0 : 1;
            const int hi = remaining - (r - j);  // leave at least 1 for each later block
            for (int a = lo; a <= hi; ++a)
                walk(j + 1, remaining - a, Matrix(acc * Xp[std::size_t(a)] * Gp[std::size_t(parts[std::size_t(j)])]));
        };
        walk(0, k, identity(d));
        out += multinomial(n, parts) * sum;
    }
    return out;
}

/** \brief Table D[p][a] = d^a/ds^a X_s^p at the point where X_s = X, for 0 <= p <= max_power,
 *         0 <= a <= max_order.
 *
 *  Leibniz rule on X_s^p = X_s^{p-1} X_s with d^b/ds^b X_s = (iG)^b X_s. Multiplying on the right
 *  keeps the order-zero column bitwise equal to power_table(X).
 */
inline std::vector<std::vector<Matrix>> power_derivative_table(const Matrix& X, const Matrix& G, int max_power,
                                                               int max_order) {
    const Index d = X.rows();
    const auto Gp = power_table(Matrix(kI * G), max_order);
    std::vector<Matrix> dX(std::size_t(max_order) + 1);
    for (int b = 0; b <= max_order; ++b) dX[std::size_t(b)] = Gp[std::size_t(b)] * X;
    std::vector<std::vector<Matrix>> D(std::size_t(max_power) + 1,
                                       std::vector<Matrix>(std::size_t(max_order) + 1, Matrix::Zero(d, d)));
    D[0][0] = identity(d);
    for (int p = 1; p <= max_power; ++p)
        for (int a = 0; a <= max_order; ++a) {
            Matrix acc = Matrix::Zero(d, d);
            for (int b = 0; b <= a; ++b) {
                if (p == 1 && a - b > 0) continue;
                acc += binomial(a, b) * (D[std::size_t(p - 1)][std::size_t(a - b)] * dX[std::size_t(b)]);
            }
            D[std::size_t(p)][std::size_t(a)] = std::move(acc);
        }
    return D;
}

/// d^n/ds^n f(X_s) at s for any path, with f(X) = f_+(X) + f_-(X).
inline Matrix function_derivative(const MultiplicativePath& path, const LaurentPolynomial& f, int n, double s) {
    const int K = f.max_abs_degree();
    const auto D = power_derivative_table(path.at(s), path.generator(), K, n);
    Matrix out = Matrix::Zero(path.dim(), path.dim());
    for (const auto& [k, c] : f.coeffs()) {
        const Matrix& term = D[std::size_t(std::abs(k))][std::size_t(n)];
        if (k >= 0) out += c * term;
        else out += c * term.adjoint();
    }
    return out;
}

enum class RemainderKind { mult_unitary, mult_contraction, linear };

/** \brief Taylor remainder of order n. For the linear kind, \c residual is the gap to the closed form. */
struct TaylorRemainder {
    Matrix matrix;
    RemainderKind kind = RemainderKind::mult_unitary;
    int order = 2;
    double residual = 0.0;
};

/** \brief Remainders R(z^k) for -K <= k <= K along a multiplicative path.
 *
 *  R(z^k) = X_1^k - X_0^k - sum_{a=1}^{n-1} (1/a!) d^a/ds^a X_s^k at 0, and R(z^{-k}) = R(z^k)^*.
 */
class MonomialRemainders {
public:
    MonomialRemainders(const MultiplicativePath& path, int n, int K) : K_(K), d_(path.dim()) {
        if (n < 2) throw InputError("remainder order must be >= 2");
        if (n - 1 > kMaxCompositionOrder)
            throw PartitionOverflow("remainder order " + std::to_string(n) + " too large");
        const auto D = power_derivative_table(path.base(), path.generator(), K, n - 1);
        const auto X1 = power_table(path.at(1.0), K);
        positive_.resize(std::size_t(K) + 1);
        for (int k = 0; k <= K; ++k) {
            Matrix R = X1[std::size_t(k)] - D[std::size_t(k)][0];
            for (int a = 1; a <= n - 1; ++a) R -= D[std::size_t(k)][std::size_t(a)] / factorial(a);
            positive_[std::size_t(k)] = std::move(R);
        }
    }

    int max_degree() const { return K_; }

    Matrix monomial(int k) const {
        if (std::abs(k) > K_) throw SupportExceedsProbes("degree " + std::to_string(k) + " beyond table");
        return k >= 0 ? positive_[std::size_t(k)] : Matrix(positive_[std::size_t(-k)].adjoint());
    }

    Matrix apply(const LaurentPolynomial& f) const {
        Matrix out = Matrix::Zero(d_, d_);
        for (const auto& [k, c] : f.coeffs()) {
            if (std::abs(k) > K_) throw SupportExceedsProbes("degree " + std::to_string(k) + " beyond table");
            if (k >= 0) out += c * positive_[std::size_t(k)];
            else out += c * positive_[std::size_t(-k)].adjoint();
        }
        return out;
    }

private:
    int K_;
    Index d_;
    std::vector<Matrix> positive_;
};

/// Multiplicative-path remainder, assembled term by term over the coefficients of f.
inline TaylorRemainder remainder_mult(const MultiplicativePath& path, const LaurentPolynomial& f, int n) {
    MonomialRemainders table(path, n, f.max_abs_degree());
    TaylorRemainder out;
    out.matrix = table.apply(f);
    out.kind = path.kind() == PathBase::unitary ? RemainderKind::mult_unitary : RemainderKind::mult_contraction;
    out.order = n;
    return out;
}

/** \brief Linear-path remainder f(U1) - f(U0) - sum_{k<n} T^{U0..U0}_{f^{[k]}}(W..W), W = U1 - U0.
 *
 *  \c residual records its distance to the single-integral form T^{U0,U1,U0..U0}_{f^{[n]}}(W..W).
 */
inline TaylorRemainder remainder_lin(const UnitaryOperator& U0, const UnitaryOperator& U1, const LaurentPolynomial& f,
                                     int n, const Tolerances& tol = {}) {
    if (n < 2) throw InputError("remainder order must be >= 2");
    require_same_dim(U0.matrix(), U1.matrix(), "remainder_lin unitaries");
    const auto D0 = spectral_decompose(U0.matrix(), tol.cluster_tol, tol.normal_tol);
    const auto D1 = spectral_decompose(U1.matrix(), tol.cluster_tol, tol.normal_tol);
    const Matrix W = U1.matrix() - U0.matrix();
    Matrix direct = apply_function(f, U1.matrix()) - apply_function(f, U0.matrix());
    for (int k = 1; k <= n - 1; ++k) {
        DecompositionList slots(std::size_t(k) + 1, &D0);
        direct -= moi_apply(divided_difference_symbol(f, k), slots, std::vector<Matrix>(std::size_t(k), W),
                            tol.max_terms)
                      .matrix;
    }
    DecompositionList slots(std::size_t(n) + 1, &D0);
    slots[1] = &D1;
    const Matrix closed =
        moi_apply(divided_difference_symbol(f, n), slots, std::vector<Matrix>(std::size_t(n), W), tol.max_terms)
            .matrix;
    TaylorRemainder out;
    out.matrix = std::move(direct);
    out.kind = RemainderKind::linear;
    out.order = n;
    out.residual = max_norm(out.matrix - closed);
    return out;
}

struct QuadratureRemainder {
    Matrix matrix;  ///< (1/(n-1)!) int_0^1 (1-t)^{n-1} d^n/ds^n f(U_s)|_{s=t} dt
    cplx trace;     ///< the same integral applied to the scalar trace of the integrand
};

/// Gauss-Legendre evaluation of the integral form of the remainder, derivatives by multilinear operator integrals.
inline QuadratureRemainder remainder_quadrature(const MultiplicativePath& path, const LaurentPolynomial& f, int n,
                                                int nodes, const Tolerances& tol = {}) {
    if (path.kind() != PathBase::unitary) throw InputError("remainder_quadrature needs a unitary path");
    if (n < 2) throw InputError("remainder order must be >= 2");
    if (nodes < 8) throw InputError("remainder_quadrature needs at least 8 nodes");
    const auto rule = gauss_legendre(nodes, 0.0, 1.0);
    QuadratureRemainder out{Matrix::Zero(path.dim(), path.dim()), 0.0};
    const double scale = 1.0 / factorial(n - 1);
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double t = rule.nodes[j];
        const double w = rule.weights[j] * scale * std::pow(1.0 - t, n - 1);
        const Matrix integrand = derivative_mult(path, f, n, t, tol);
        out.matrix += w * integrand;
        out.trace += w * integrand.trace();
    }
    return out;
}

}  // namespace shiftlab
