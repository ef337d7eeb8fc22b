#pragma once

/** \file linops.hpp
 *  \brief Dense complex operators: class validation, spectral decomposition of normal
 *         matrices, Hermitian functional calculus, Schatten norms and defect operators.
 */

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "config.hpp"
#include "errors.hpp"

namespace shiftlab {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

/// Largest entry modulus.
inline double max_norm(const Matrix& M) { return M.size() ? M.cwiseAbs().maxCoeff() : 0.0; }

inline Matrix identity(Index d) { return Matrix::Identity(d, d); }

inline void require_square(const Matrix& M, const std::string& what) {
    if (M.rows() != M.cols() || M.rows() == 0)
        throw DimensionMismatch(what + " must be a non-empty square matrix, got " +
                                std::to_string(M.rows()) + "x" + std::to_string(M.cols()));
    if (!M.allFinite()) throw InputError(what + " has non-finite entries");
}

inline void require_same_dim(const Matrix& A, const Matrix& B, const std::string& what) {
    if (A.rows() != B.rows() || A.cols() != B.cols())
        throw DimensionMismatch(what + ": " + std::to_string(A.rows()) + "x" + std::to_string(A.cols()) +
                                " vs " + std::to_string(B.rows()) + "x" + std::to_string(B.cols()));
}

/// Largest singular value.
inline double operator_norm(const Matrix& M) {
    if (M.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(M);
    return svd.singularValues()(0);
}

enum class OperatorKind { unitary, contraction, selfadjoint };

inline std::string to_string(OperatorKind k) {
    switch (k) {
        case OperatorKind::unitary: return "unitary";
        case OperatorKind::contraction: return "contraction";
        case OperatorKind::selfadjoint: return "selfadjoint";
    }
    return "?";
}

/// Measured distance from the operator class; zero means the invariant holds exactly.
inline double class_defect(const Matrix& M, OperatorKind kind) {
    require_square(M, "operator");
    const Matrix I = identity(M.rows());
    switch (kind) {
        case OperatorKind::unitary:
            return std::max(max_norm(M.adjoint() * M - I), max_norm(M * M.adjoint() - I));
        case OperatorKind::contraction:
            return std::max(0.0, operator_norm(M) - 1.0);
        case OperatorKind::selfadjoint:
            return max_norm(M - M.adjoint());
    }
    return std::numeric_limits<double>::infinity();
}

/** \brief Matrix tagged with a verified operator class. */
template <OperatorKind K>
class TypedOperator {
public:
    static constexpr OperatorKind kind = K;

    explicit TypedOperator(Matrix m, double tol = Tolerances{}.class_tol) : m_(std::move(m)), tol_(tol) {
        const double defect = class_defect(m_, K);
        if (!(defect <= tol_))
            throw ClassViolation("not " + to_string(K) + ": defect " + std::to_string(defect) +
                                 " exceeds tolerance " + std::to_string(tol_));
    }

    const Matrix& matrix() const { return m_; }
    double tolerance() const { return tol_; }
    Index dim() const { return m_.rows(); }

private:
    Matrix m_;
    double tol_;
};

using UnitaryOperator = TypedOperator<OperatorKind::unitary>;
using ContractionOperator = TypedOperator<OperatorKind::contraction>;
using SelfAdjointOperator = TypedOperator<OperatorKind::selfadjoint>;
using AnyOperator = std::variant<UnitaryOperator, ContractionOperator, SelfAdjointOperator>;

template <OperatorKind K>
TypedOperator<K> validate(const Matrix& M, double tol) {
    return TypedOperator<K>(M, tol);
}

/// Runtime-dispatched validation. Throws ClassViolation with the measured defect.
inline AnyOperator validate(const Matrix& M, OperatorKind kind, double tol) {
    switch (kind) {
        case OperatorKind::unitary: return UnitaryOperator(M, tol);
        case OperatorKind::contraction: return ContractionOperator(M, tol);
        case OperatorKind::selfadjoint: return SelfAdjointOperator(M, tol);
    }
    throw InputError("unknown operator kind");
}

/** \brief Eigenvalues and eigenprojections of a normal matrix.
 *
 *  The orthonormal eigenbasis is kept as well: column j of \c basis spans part of the range of
 *  projection \c cluster_of[j]. Multilinear operator integrals are evaluated in that basis.
 */
struct SpectralDecomposition {
    std::vector<cplx> eigenvalues;
    std::vector<Matrix> projections;
    Matrix basis;
    std::vector<int> cluster_of;

    Index dim() const { return basis.rows(); }
    std::size_t cluster_count() const { return eigenvalues.size(); }

    Matrix reconstruct() const {
        Matrix out = Matrix::Zero(dim(), dim());
        for (std::size_t j = 0; j < eigenvalues.size(); ++j) out += eigenvalues[j] * projections[j];
        return out;
    }
};

namespace detail {

inline SpectralDecomposition cluster_eigenpairs(const Vector& values, const Matrix& basis, double cluster_tol) {
    const Index d = values.size();
    std::vector<int> parent(d);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (Index a = 0; a < d; ++a)
        for (Index b = a + 1; b < d; ++b)
            if (std::abs(values(a) - values(b)) < cluster_tol) parent[find(int(a))] = find(int(b));

    SpectralDecomposition out;
    out.basis = basis;
    out.cluster_of.assign(d, -1);
    std::vector<int> root_to_cluster(d, -1);
    std::vector<std::vector<Index>> members;
    for (Index a = 0; a < d; ++a) {
        const int r = find(int(a));
        if (root_to_cluster[r] < 0) {
            root_to_cluster[r] = int(members.size());
            members.emplace_back();
        }
        out.cluster_of[a] = root_to_cluster[r];
        members[root_to_cluster[r]].push_back(a);
    }
    for (const auto& mem : members) {
        cplx mean = 0.0;
        for (Index a : mem) mean += values(a);
        mean /= double(mem.size());
        for (Index a : mem)
            for (Index b : mem)
                if (std::abs(values(a) - values(b)) > cluster_tol)
                    throw ClusterAmbiguity("eigenvalue chain of diameter " +
                                           std::to_string(std::abs(values(a) - values(b))) +
                                           " exceeds cluster_tol " + std::to_string(cluster_tol));
        Matrix Q(d, Index(mem.size()));
        for (std::size_t c = 0; c < mem.size(); ++c) Q.col(Index(c)) = basis.col(mem[c]);
        out.eigenvalues.push_back(mean);
        out.projections.push_back(Q * Q.adjoint());
    }
    return out;
}

}  // namespace detail

/** \brief Spectral decomposition of a normal matrix through the complex Schur form.
 *
 *  Hermitian input takes the self-adjoint eigensolver path. Eigenvalues closer than
 *  \p cluster_tol are merged (single linkage); a merged group wider than \p cluster_tol
 *  raises ClusterAmbiguity.
 */
inline SpectralDecomposition spectral_decompose(const Matrix& M, double cluster_tol = Tolerances{}.cluster_tol,
                                                double normal_tol = Tolerances{}.normal_tol) {
    require_square(M, "spectral_decompose input");
    const double scale = std::max(1.0, max_norm(M));
    const double commutator = max_norm(M * M.adjoint() - M.adjoint() * M);
    if (commutator > normal_tol * scale * scale)
        throw NotNormal("commutator defect " + std::to_string(commutator));

    if (max_norm(M - M.adjoint()) <= 1e-14 * scale) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (M + M.adjoint()));
        if (es.info() != Eigen::Success) throw NumericalError("self-adjoint eigensolver failed");
        return detail::cluster_eigenpairs(es.eigenvalues().cast<cplx>(), es.eigenvectors(), cluster_tol);
    }
    Eigen::ComplexSchur<Matrix> schur(M);
    if (schur.info() != Eigen::Success) throw NumericalError("Schur decomposition failed");
    return detail::cluster_eigenpairs(schur.matrixT().diagonal(), schur.matrixU(), cluster_tol);
}

/// phi(H) for Hermitian H through its eigendecomposition.
template <class F>
Matrix hermitian_apply(const Matrix& H, F&& phi) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (H + H.adjoint()));
    if (es.info() != Eigen::Success) throw NumericalError("self-adjoint eigensolver failed");
    Vector vals(H.rows());
    for (Index j = 0; j < H.rows(); ++j) vals(j) = phi(es.eigenvalues()(j));
    return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

/// e^{isG} for a Hermitian matrix G, untyped.
inline Matrix exp_i(const Matrix& G, double s) {
    if (s == 0.0 || G.isZero(0.0)) return Matrix::Identity(G.rows(), G.cols());
    return hermitian_apply(G, [s](double x) { return std::exp(kI * (s * x)); });
}

/// e^{isA} for self-adjoint A.
inline UnitaryOperator matrix_exp_i(const SelfAdjointOperator& A, double s) {
    return UnitaryOperator(exp_i(A.matrix(), s), 1e-10);
}

/// l_p norm of the singular values; p = infinity gives the operator norm.
inline double schatten_norm(const Matrix& M, double p) {
    if (!(p >= 1.0)) throw InvalidP("Schatten exponent must be >= 1 or infinity, got " + std::to_string(p));
    if (M.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(M);
    const Eigen::VectorXd& s = svd.singularValues();
    const double top = s(0);
    if (std::isinf(p) || top == 0.0) return top;
    double acc = 0.0;
    for (Index j = 0; j < s.size(); ++j) acc += std::pow(s(j) / top, p);
    return top * std::pow(acc, 1.0 / p);
}

/// Principal square root of a Hermitian positive semidefinite matrix, clamping tiny negatives.
inline Matrix psd_sqrt(const Matrix& H, double clamp_tol) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (H + H.adjoint()));
    if (es.info() != Eigen::Success) throw NumericalError("self-adjoint eigensolver failed");
    Eigen::VectorXd vals = es.eigenvalues();
    for (Index j = 0; j < vals.size(); ++j) {
        if (vals(j) < -clamp_tol)
            throw NegativeEigenvalue("eigenvalue " + std::to_string(vals(j)) + " below -" +
                                     std::to_string(clamp_tol));
        vals(j) = std::sqrt(std::max(vals(j), 0.0));
    }
    return es.eigenvectors() * vals.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

struct DefectPair {
    Matrix d_t;       ///< (I - T*T)^{1/2}
    Matrix d_t_star;  ///< (I - TT*)^{1/2}
};

inline DefectPair defect_pair(const ContractionOperator& T, double clamp_tol = Tolerances{}.clamp_tol) {
    const Matrix& t = T.matrix();
    const Matrix I = identity(t.rows());
    return {psd_sqrt(I - t.adjoint() * t, clamp_tol), psd_sqrt(I - t * t.adjoint(), clamp_tol)};
}

/// X^k for k >= 0 by repeated squaring.
inline Matrix matrix_power(const Matrix& X, int k) {
    Matrix result = identity(X.rows());
    Matrix base = X;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

/// Powers X^0 ... X^k computed by successive multiplication.
inline std::vector<Matrix> power_table(const Matrix& X, int k) {
    std::vector<Matrix> out;
    out.reserve(std::size_t(k) + 1);
    out.push_back(identity(X.rows()));
    for (int j = 1; j <= k; ++j) out.push_back(out.back() * X);
    return out;
}

}  // namespace shiftlab
