#pragma once

// Reference computations for the tests. Each one takes a different route from the library code
// it checks: projection sums instead of eigenbasis walks, Taylor series instead of eigen
// decompositions, finite differences instead of closed forms, and so on.

#include <functional>
#include <vector>

#include "shiftlab/shiftlab.hpp"

namespace oracle {

using shiftlab::cplx;
using shiftlab::Index;
using shiftlab::Matrix;

/// e^{M} by scaling and squaring of the Taylor series.
inline Matrix expm(const Matrix& M) {
    const double norm = M.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    while (norm / std::pow(2.0, squarings) > 0.25) ++squarings;
    const Matrix X = M / std::pow(2.0, squarings);
    Matrix term = Matrix::Identity(M.rows(), M.cols());
    Matrix out = term;
    for (int k = 1; k < 30; ++k) {
        term = term * X / double(k);
        out += term;
    }
    for (int s = 0; s < squarings; ++s) out = out * out;
    return out;
}

/// X^k for any integer k, by repeated multiplication (inverse for k < 0).
inline Matrix power(const Matrix& X, int k) {
    const Matrix base = k >= 0 ? X : Matrix(X.inverse());
    Matrix out = Matrix::Identity(X.rows(), X.cols());
    for (int j = 0; j < std::abs(k); ++j) out = out * base;
    return out;
}

/// f(U) for a unitary U as sum_k a_k U^k, negative powers through the inverse.
inline Matrix apply_unitary(const shiftlab::LaurentPolynomial& f, const Matrix& U) {
    Matrix out = Matrix::Zero(U.rows(), U.cols());
    for (const auto& [k, c] : f.coeffs()) out += c * power(U, k);
    return out;
}

/** \brief f^{[k]}(z_0..z_k) as the (0, k) entry of f(J), J upper bidiagonal with the points on
 *         the diagonal and ones above it. Valid for confluent points in any order.
 */
inline cplx divided_difference_jordan(const shiftlab::LaurentPolynomial& f, const std::vector<cplx>& z) {
    const Index n = Index(z.size());
    Matrix J = Matrix::Zero(n, n);
    for (Index j = 0; j < n; ++j) {
        J(j, j) = z[std::size_t(j)];
        if (j + 1 < n) J(j, j + 1) = 1.0;
    }
    Matrix F = Matrix::Zero(n, n);
    for (const auto& [k, c] : f.coeffs()) F += c * power(J, k);
    return F(0, n - 1);
}

/// Newton table at distinct points.
inline cplx divided_difference_table(const std::function<cplx(cplx)>& f, const std::vector<cplx>& z) {
    std::vector<cplx> t;
    for (auto p : z) t.push_back(f(p));
    for (std::size_t level = 1; level < z.size(); ++level)
        for (std::size_t j = 0; j + level < z.size(); ++j) t[j] = (t[j + 1] - t[j]) / (z[j + level] - z[j]);
    return t[0];
}

/// Eigenvalues and rank-one projections of a normal matrix with simple spectrum.
struct Eigenpairs {
    std::vector<cplx> values;
    std::vector<Matrix> projections;
};

inline Eigenpairs eigenpairs(const Matrix& M) {
    Eigen::ComplexEigenSolver<Matrix> es(M);
    Eigenpairs out;
    for (Index j = 0; j < M.rows(); ++j) {
        const shiftlab::Vector v = es.eigenvectors().col(j).normalized();
        out.values.push_back(es.eigenvalues()(j));
        out.projections.push_back(v * v.adjoint());
    }
    return out;
}

/// sum over index tuples of phi(lambda) P_0 V_1 P_1 ... V_k P_k, literally.
inline Matrix moi_projection_sum(const std::function<cplx(const std::vector<cplx>&)>& phi,
                                 const std::vector<Eigenpairs>& slots, const std::vector<Matrix>& V) {
    const Index d = slots.front().projections.front().rows();
    Matrix out = Matrix::Zero(d, d);
    std::vector<cplx> lam(slots.size());
    std::function<void(std::size_t, const Matrix&)> walk = [&](std::size_t l, const Matrix& acc) {
        for (std::size_t j = 0; j < slots[l].values.size(); ++j) {
            lam[l] = slots[l].values[j];
            Matrix next = acc * slots[l].projections[j];
            if (l + 1 == slots.size()) out += phi(lam) * next;
            else walk(l + 1, Matrix(next * V[l]));
        }
    };
    walk(0, Matrix::Identity(d, d));
    return out;
}

/// Central finite-difference estimate of the n-th derivative (n = 1, 2, 3).
inline Matrix finite_difference(const std::function<Matrix(double)>& F, double s, double h, int n) {
    switch (n) {
        case 1: return (F(s + h) - F(s - h)) / (2.0 * h);
        case 2: return (F(s + h) - 2.0 * F(s) + F(s - h)) / (h * h);
        case 3: return (F(s + 2 * h) - 2.0 * F(s + h) + 2.0 * F(s - h) - F(s - 2 * h)) / (2.0 * h * h * h);
    }
    throw std::invalid_argument("finite_difference supports n = 1, 2, 3");
}

/** \brief d^a/ds^a of (X_s^*)^k at s = 0 where X_s^* = X^* e^{-isG}, by a Leibniz recursion on
 *         Y^p = Y^{p-1} Y with d^b Y = X^* (-iG)^b.
 */
inline Matrix adjoint_power_derivative(const Matrix& X, const Matrix& G, int k, int a) {
    const Index d = X.rows();
    const Matrix Y = X.adjoint();
    std::vector<Matrix> dY(std::size_t(a) + 1);
    Matrix g = Matrix::Identity(d, d);
    for (int b = 0; b <= a; ++b) {
        dY[std::size_t(b)] = Y * g;
        g = g * (cplx(0.0, -1.0) * G);
    }
    // P[j] = d^j (Y^p)
    std::vector<Matrix> P(std::size_t(a) + 1, Matrix::Zero(d, d));
    P[0] = Matrix::Identity(d, d);
    for (int p = 1; p <= k; ++p) {
        std::vector<Matrix> next(std::size_t(a) + 1, Matrix::Zero(d, d));
        for (int j = 0; j <= a; ++j)
            for (int b = 0; b <= j; ++b)
                next[std::size_t(j)] += shiftlab::binomial(j, b) * (P[std::size_t(j - b)] * dY[std::size_t(b)]);
        P = std::move(next);
    }
    return P[std::size_t(a)];
}

/** \brief Integral over increasing lambda of g(lambda), by the substitution lambda = tan u on
 *         u in (-pi/2 + eps, pi/2 - eps).
 */
inline cplx increasing_lambda_integral(const std::function<cplx(double)>& g, double eps, int panels) {
    const auto rule = shiftlab::composite_gauss_legendre(panels, 16, -shiftlab::kPi / 2 + eps, shiftlab::kPi / 2 - eps);
    cplx acc = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double u = rule.nodes[j];
        const double c = std::cos(u);
        acc += rule.weights[j] * g(std::tan(u)) / (c * c);
    }
    return acc;
}

/// Scalar Taylor remainder of f(e^{isa} u0) at s = 1, derivatives by finite sums of monomials.
inline cplx scalar_mult_remainder(const shiftlab::LaurentPolynomial& f, cplx u0, double a, int n) {
    cplx out = 0.0;
    for (const auto& [k, c] : f.coeffs()) {
        const cplx base = std::pow(u0, k);
        cplx r = base * std::exp(cplx(0.0, a * k)) - base;
        cplx term = base;
        for (int j = 1; j <= n - 1; ++j) {
            term *= cplx(0.0, a * k) / double(j);
            r -= term;
        }
        out += c * r;
    }
    return out;
}

}  // namespace oracle
