#pragma once

/** \file ensemble.hpp
 *  \brief Seeded random instances: unitaries, generators, contractions, dissipative operators,
 *         self-adjoint pairs and trigonometric test polynomials.
 */

#include <random>
#include <string>

#include "cayley.hpp"

namespace shiftlab {

enum class InstanceKind { unitary, selfadjoint_generator, contraction, dissipative, selfadjoint_pair };

inline std::string to_string(InstanceKind k) {
    switch (k) {
        case InstanceKind::unitary: return "unitary";
        case InstanceKind::selfadjoint_generator: return "selfadjoint-generator";
        case InstanceKind::contraction: return "contraction";
        case InstanceKind::dissipative: return "dissipative";
        case InstanceKind::selfadjoint_pair: return "selfadjoint-pair";
    }
    return "?";
}

inline InstanceKind instance_kind_from_string(const std::string& s) {
    for (auto k : {InstanceKind::unitary, InstanceKind::selfadjoint_generator, InstanceKind::contraction,
                   InstanceKind::dissipative, InstanceKind::selfadjoint_pair})
        if (to_string(k) == s) return k;
    throw ConfigError("unknown instance kind \"" + s + "\"");
}

/// Smallest pairwise distance between eigenvalues; +inf in dimension 1.
inline double spectral_separation(const Matrix& M) {
    const Vector ev = Eigen::ComplexEigenSolver<Matrix>(M, false).eigenvalues();
    double out = std::numeric_limits<double>::infinity();
    for (Index a = 0; a < ev.size(); ++a)
        for (Index b = a + 1; b < ev.size(); ++b) out = std::min(out, std::abs(ev(a) - ev(b)));
    return out;
}

class Ensemble {
public:
    explicit Ensemble(std::uint64_t seed, Tolerances tol = {}) : rng_(seed), tol_(tol) {}

    /// Entries (N(0,1) + i N(0,1)) / sqrt 2.
    Matrix ginibre(Index d) {
        Matrix G(d, d);
        for (Index c = 0; c < d; ++c)
            for (Index r = 0; r < d; ++r) G(r, c) = cplx(normal_(rng_), normal_(rng_)) / std::sqrt(2.0);
        return G;
    }

    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }

    /// Haar unitary: QR of a Ginibre draw with the phases of diag(R) moved into Q.
    UnitaryOperator unitary(Index d) {
        return resample([&] {
            const Matrix G = ginibre(d);
            Eigen::HouseholderQR<Matrix> qr(G);
            Matrix Q = qr.householderQ();
            const Matrix R = qr.matrixQR();
            for (Index j = 0; j < d; ++j) {
                const double a = std::abs(R(j, j));
                if (a > 0.0) Q.col(j) *= R(j, j) / a;
            }
            return Q;
        }, [](const Matrix& M) { return UnitaryOperator(M, 1e-10); });
    }

    /// Hermitian matrix with operator norm \p norm (at most tol.generator_norm).
    SelfAdjointOperator generator(Index d, double norm) {
        if (norm > tol_.generator_norm + 1e-12)
            throw ConfigError("generator norm " + std::to_string(norm) + " exceeds " +
                              std::to_string(tol_.generator_norm));
        if (norm == 0.0) return SelfAdjointOperator(Matrix::Zero(d, d));
        return resample([&] { return hermitian_with_norm(d, norm); },
                        [](const Matrix& M) { return SelfAdjointOperator(M, 1e-12); });
    }

    /// Ginibre draw scaled to operator norm 1 - contraction_margin.
    ContractionOperator contraction(Index d) {
        return resample([&] {
            const Matrix G = ginibre(d);
            return Matrix(G * ((1.0 - tol_.contraction_margin) / operator_norm(G)));
        }, [](const Matrix& M) { return ContractionOperator(M, 1e-10); });
    }

    /// L = H - iK with H Hermitian of norm \p norm and K positive semidefinite of norm \p damping.
    DissipativeOperator dissipative(Index d, double norm, double damping) {
        return resample([&] {
            const Matrix H = hermitian_with_norm(d, norm);
            const Matrix G = ginibre(d);
            Matrix K = G * G.adjoint();
            K *= damping / operator_norm(K);
            return Matrix(H - kI * K);
        }, [](const Matrix& M) { return DissipativeOperator(M, 1e-12); });
    }

    /// (H0, V) with ||H0|| = \p norm and ||V|| = \p pert.
    std::pair<SelfAdjointOperator, SelfAdjointOperator> selfadjoint_pair(Index d, double norm, double pert) {
        auto h0 = generator(d, norm);
        return {std::move(h0), generator(d, pert)};
    }

    /** \brief sum_{|k| <= degree} a_k z^k with Gaussian a_k, normalized to sum |a_k| = 1 and with
     *         at least one coefficient of top degree.
     */
    LaurentPolynomial trig_polynomial(int degree) {
        LaurentPolynomial f;
        double l1 = 0.0;
        for (int k = -degree; k <= degree; ++k) {
            const cplx a(normal_(rng_), normal_(rng_));
            f.set(k, a);
            l1 += std::abs(a);
        }
        return f * cplx(1.0 / l1, 0.0);
    }

private:
    Matrix hermitian_with_norm(Index d, double norm) {
        const Matrix G = ginibre(d);
        Matrix H = (G + G.adjoint()) / 2.0;
        const double s = operator_norm(H);
        return s > 0.0 ? Matrix(H * (norm / s)) : H;
    }

    template <class Draw, class Wrap>
    auto resample(Draw draw, Wrap wrap) -> decltype(wrap(draw())) {
        for (int attempt = 0; attempt < 100; ++attempt) {
            Matrix M = draw();
            if (M.rows() < 2 || spectral_separation(M) >= tol_.min_separation) return wrap(std::move(M));
        }
        throw SeparationUnreachable("no draw with spectral separation >= " + std::to_string(tol_.min_separation) +
                                    " in 100 attempts");
    }

    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    Tolerances tol_;
};

}  // namespace shiftlab
