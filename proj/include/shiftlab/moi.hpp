#pragma once

/** \file moi.hpp
 *  \brief Multilinear operator integrals of normal matrices as joint eigenprojection sums,
 *         trace reductions and perturbation identities.
 */

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "divided_difference.hpp"
#include "linops.hpp"

namespace shiftlab {

/** \brief Scalar symbol of k+1 spectral variables. */
struct MoiSymbol {
    int arity = 1;
    std::function<cplx(std::span<const cplx>)> evaluator;

    cplx operator()(std::span<const cplx> z) const { return evaluator(z); }
};

/// f^{[k]} evaluated through the monomial closed forms (confluence safe).
inline MoiSymbol divided_difference_symbol(const LaurentPolynomial& f, int k) {
    return {k + 1, [f](std::span<const cplx> z) { return laurent_divided_difference<double>(f, z); }};
}

/// (z_0..z_{n-1}) -> f^{[n]}(z_0, .., z_{n-1}, z_0).
inline MoiSymbol cyclic_symbol(const LaurentPolynomial& f, int n) {
    return {n, [f](std::span<const cplx> z) {
                std::vector<cplx> pts(z.begin(), z.end());
                pts.push_back(z[0]);
                return laurent_divided_difference<double>(f, std::span<const cplx>(pts));
            }};
}

inline MoiSymbol constant_symbol(cplx c, int arity) {
    return {arity, [c](std::span<const cplx>) { return c; }};
}

struct MoiResult {
    Matrix matrix;
    long long term_count = 0;   ///< product of the cluster counts
    double bound_report = 0.0;  ///< max|symbol| * prod ||V_i|| (diagnostic)
};

using DecompositionList = std::vector<const SpectralDecomposition*>;

/** \brief sum over joint cluster tuples of phi(lambda) P_{0,j0} V_1 P_{1,j1} ... V_k P_{k,jk}.
 *
 *  Evaluated as Q_0 X Q_k^* where X(a,b) = sum over eigenvector index paths a=i_0,..,i_k=b of
 *  phi(cluster eigenvalues) W_1(i_0,i_1) ... W_k(i_{k-1},i_k), with W_l = Q_{l-1}^* V_l Q_l.
 *  The summation order is fixed, so results are deterministic.
 */
inline MoiResult moi_apply(const MoiSymbol& symbol, const DecompositionList& decomps, const std::vector<Matrix>& V,
                           long long max_terms = Tolerances{}.max_terms) {
    const std::size_t k = V.size();
    if (decomps.size() != k + 1)
        throw DimensionMismatch("moi_apply: " + std::to_string(k) + " perturbations need " + std::to_string(k + 1) +
                                " spectral decompositions, got " + std::to_string(decomps.size()));
    if (symbol.arity != int(k + 1))
        throw DimensionMismatch("moi_apply: symbol arity " + std::to_string(symbol.arity) + " does not match " +
                                std::to_string(k + 1) + " slots");
    const Index d = decomps[0]->dim();
    for (const auto* D : decomps)
        if (D->dim() != d) throw DimensionMismatch("moi_apply: decompositions of different dimension");
    for (const auto& v : V)
        if (v.rows() != d || v.cols() != d) throw DimensionMismatch("moi_apply: perturbation of wrong dimension");

    MoiResult out;
    std::vector<std::size_t> counts(k + 1), stride(k + 1);
    long long terms = 1;
    double paths = 1.0;
    for (std::size_t l = 0; l <= k; ++l) {
        counts[l] = decomps[l]->cluster_count();
        terms *= (long long)counts[l];
        paths *= double(d);
        if (terms > max_terms || paths > double(max_terms))
            throw ComplexityGuard("joint eigen-sum exceeds " + std::to_string(max_terms) + " terms");
    }
    out.term_count = terms;
    stride[k] = 1;
    for (std::size_t l = k; l-- > 0;) stride[l] = stride[l + 1] * counts[l + 1];

    // Symbol tensor over cluster tuples.
    std::vector<cplx> phi(static_cast<std::size_t>(terms));
    std::vector<std::size_t> idx(k + 1, 0);
    std::vector<cplx> lam(k + 1);
    double sup = 0.0;
    for (std::size_t flat = 0; flat < phi.size(); ++flat) {
        std::size_t rem = flat;
        for (std::size_t l = 0; l <= k; ++l) {
            idx[l] = rem / stride[l];
            rem %= stride[l];
            lam[l] = decomps[l]->eigenvalues[idx[l]];
        }
        phi[flat] = symbol(std::span<const cplx>(lam));
        sup = std::max(sup, std::abs(phi[flat]));
    }

    double vnorm = 1.0;
    std::vector<Matrix> W(k);
    for (std::size_t l = 0; l < k; ++l) {
        W[l] = decomps[l]->basis.adjoint() * V[l] * decomps[l + 1]->basis;
        vnorm *= operator_norm(V[l]);
    }
    out.bound_report = sup * vnorm;

    Matrix X = Matrix::Zero(d, d);
    if (k == 0) {
        for (Index a = 0; a < d; ++a) X(a, a) = phi[std::size_t(decomps[0]->cluster_of[a])];
    } else {
        // Depth-first walk over index paths with running products.
        std::vector<Index> path(k + 1, 0);
        std::vector<cplx> prod(k + 1, 1.0);
        std::vector<std::size_t> offset(k + 1, 0);
        for (Index a = 0; a < d; ++a) {
            path[0] = a;
            prod[0] = 1.0;
            offset[0] = stride[0] * std::size_t(decomps[0]->cluster_of[a]);
            std::size_t level = 1;
            path[1] = -1;
            while (level > 0) {
                if (++path[level] >= d) {
                    --level;
                    continue;
                }
                const Index i = path[level];
                prod[level] = prod[level - 1] * W[level - 1](path[level - 1], i);
                offset[level] = offset[level - 1] + stride[level] * std::size_t(decomps[level]->cluster_of[i]);
                if (level == k) {
                    X(a, i) += phi[offset[level]] * prod[level];
                } else {
                    ++level;
                    path[level] = -1;
                }
            }
        }
    }
    out.matrix = decomps[0]->basis * X * decomps[k]->basis.adjoint();
    return out;
}

/** \brief Tr T^{U0,U1,U0,..,U0}_{f^{[n]}}(V_1..V_n) and Tr(T_{tilde}(V_1..V_{n-1}) V_n).
 *
 *  For n = 1 both slots carry U0 and the right side is Tr(f'(U0) V_1).
 */
inline std::pair<cplx, cplx> trace_reduce(const LaurentPolynomial& f, int n, const UnitaryOperator& U0,
                                          const UnitaryOperator& U1, const std::vector<Matrix>& V,
                                          const Tolerances& tol = {}) {
    if (n < 1 || int(V.size()) != n)
        throw DimensionMismatch("trace_reduce needs n >= 1 and exactly n perturbations");
    require_same_dim(U0.matrix(), U1.matrix(), "trace_reduce unitaries");
    const auto D0 = spectral_decompose(U0.matrix(), tol.cluster_tol, tol.normal_tol);
    const auto D1 = spectral_decompose(U1.matrix(), tol.cluster_tol, tol.normal_tol);
    DecompositionList slots(std::size_t(n) + 1, &D0);
    if (n >= 2) slots[1] = &D1;
    const cplx lhs = moi_apply(divided_difference_symbol(f, n), slots, V, tol.max_terms).matrix.trace();
    DecompositionList reduced(slots.begin(), slots.end() - 1);
    std::vector<Matrix> head(V.begin(), V.end() - 1);
    const Matrix inner = moi_apply(cyclic_symbol(f, n), reduced, head, tol.max_terms).matrix;
    const cplx rhs = (inner * V.back()).trace();
    return {lhs, rhs};
}

/// max of the residuals of f(U1)-f(U0) = T^{U1,U0}(U1-U0) = T^{U0,U1}(U1-U0).
inline double perturbation_first(const LaurentPolynomial& f, const UnitaryOperator& U0, const UnitaryOperator& U1,
                                 const Tolerances& tol = {}) {
    require_same_dim(U0.matrix(), U1.matrix(), "perturbation_first unitaries");
    const auto D0 = spectral_decompose(U0.matrix(), tol.cluster_tol, tol.normal_tol);
    const auto D1 = spectral_decompose(U1.matrix(), tol.cluster_tol, tol.normal_tol);
    const Matrix diff = apply_function(f, U1.matrix()) - apply_function(f, U0.matrix());
    const Matrix W = U1.matrix() - U0.matrix();
    const auto sym = divided_difference_symbol(f, 1);
    const Matrix a = moi_apply(sym, {&D1, &D0}, {W}, tol.max_terms).matrix;
    const Matrix b = moi_apply(sym, {&D0, &D1}, {W}, tol.max_terms).matrix;
    return std::max(max_norm(diff - a), max_norm(diff - b));
}

/** \brief Residual of
 *  T^{U0,U1,U0..}_{f^{[n-1]}}(V) - T^{U0,U2,U0..}_{f^{[n-1]}}(V) = T^{U0,U1,U2,U0..}_{f^{[n]}}(V_1, U1-U2, V_2..).
 */
inline double perturbation_split(const LaurentPolynomial& f, int n, const UnitaryOperator& U0,
                                 const UnitaryOperator& U1, const UnitaryOperator& U2, const std::vector<Matrix>& V,
                                 const Tolerances& tol = {}) {
    if (n < 2 || int(V.size()) != n - 1)
        throw DimensionMismatch("perturbation_split needs n >= 2 and n-1 perturbations");
    require_same_dim(U0.matrix(), U1.matrix(), "perturbation_split unitaries");
    require_same_dim(U0.matrix(), U2.matrix(), "perturbation_split unitaries");
    const auto D0 = spectral_decompose(U0.matrix(), tol.cluster_tol, tol.normal_tol);
    const auto D1 = spectral_decompose(U1.matrix(), tol.cluster_tol, tol.normal_tol);
    const auto D2 = spectral_decompose(U2.matrix(), tol.cluster_tol, tol.normal_tol);

    DecompositionList left1(std::size_t(n), &D0), left2(std::size_t(n), &D0);
    left1[1] = &D1;
    left2[1] = &D2;
    const auto low = divided_difference_symbol(f, n - 1);
    const Matrix lhs = moi_apply(low, left1, V, tol.max_terms).matrix - moi_apply(low, left2, V, tol.max_terms).matrix;

    DecompositionList right(std::size_t(n) + 1, &D0);
    right[1] = &D1;
    right[2] = &D2;
    std::vector<Matrix> W;
    W.push_back(V[0]);
    W.push_back(U1.matrix() - U2.matrix());
    for (std::size_t j = 1; j < V.size(); ++j) W.push_back(V[j]);
    const Matrix rhs = moi_apply(divided_difference_symbol(f, n), right, W, tol.max_terms).matrix;
    return max_norm(lhs - rhs);
}

}  // namespace shiftlab
