#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace shiftlab;

TEST(Dilation, ZeroContractionIsAShift) {
    const auto dil = build_dilation(ContractionOperator(Matrix::Zero(1, 1)), 2);
    ASSERT_EQ(dil.total_dim(), 5);
    // layout: top1 top2 middle bottom1 bottom2
    Matrix expected = Matrix::Zero(5, 5);
    expected(0, 1) = 1.0;   // S* on the top copies
    expected(2, 0) = 1.0;   // D_{T*} coupling
    expected(3, 2) = 1.0;   // D_T coupling
    expected(4, 3) = 1.0;   // S on the bottom copies
    EXPECT_LT(max_norm(dil.matrix - expected), 1e-15);
    for (int k = 1; k <= 2; ++k) EXPECT_LT(max_norm(compress_middle(oracle::power(dil.matrix, k), dil)), 1e-15);
}

TEST(Dilation, UnitaryBaseDecouples) {
    Ensemble ens(101);
    const auto U = ens.unitary(2);
    const auto dil = build_dilation(ContractionOperator(U.matrix(), 1e-10), 3);
    const Index d = 2, mid = dil.middle_offset(), bot = dil.bottom_offset();
    EXPECT_LT(max_norm(dil.matrix.block(mid, mid, d, d) - U.matrix()), 1e-15);
    // couplings D_{T*}, D_T and -T* P: the first two vanish, -T* sits below the top copy
    EXPECT_LT(max_norm(dil.matrix.block(mid, 0, d, d)), 1e-6);
    EXPECT_LT(max_norm(dil.matrix.block(bot, mid, d, d)), 1e-6);
    EXPECT_LT(max_norm(dil.matrix.block(bot, 0, d, d) + U.matrix().adjoint()), 1e-15);
    // middle row and column carry nothing else
    EXPECT_LT(max_norm(dil.matrix.block(0, mid, mid, d)), 1e-15);
    EXPECT_LT(max_norm(dil.matrix.block(mid, bot, d, dil.side_dim())), 1e-15);
}

TEST(Dilation, PowerCompressionReproducesPowers) {
    Ensemble ens(102);
    const auto T0 = ens.contraction(3);
    const int N = 6;
    const auto dil = build_dilation(T0, N);
    for (int k = 0; k <= N; ++k) {
        EXPECT_LT(max_norm(compress_middle(oracle::power(dil.matrix, k), dil) - oracle::power(T0.matrix(), k)), 1e-12)
            << "k=" << k;
        const Matrix adj = oracle::power(Matrix(dil.matrix.adjoint()), k);
        EXPECT_LT(max_norm(compress_middle(adj, dil) - oracle::power(Matrix(T0.matrix().adjoint()), k)), 1e-12)
            << "k=-" << k;
    }
}

TEST(Dilation, IsometricOnRetainedColumns) {
    // every column except the last bottom copy, which the truncated shift sends to zero, is orthonormal
    Ensemble ens(103);
    const auto dil = build_dilation(ens.contraction(3), 4);
    const Index d = 3;
    const Matrix cols = dil.matrix.leftCols(dil.total_dim() - d);
    EXPECT_LT(max_norm(cols.adjoint() * cols - identity(cols.cols())), 1e-12);
}

TEST(Dilation, RejectsZeroDepth) {
    EXPECT_THROW(build_dilation(ContractionOperator(Matrix::Zero(2, 2)), 0), InputError);
}

TEST(CompressMiddle, IdentityAndSelf) {
    Ensemble ens(104);
    const auto T0 = ens.contraction(3);
    const auto dil = build_dilation(T0, 3);
    EXPECT_LT(max_norm(compress_middle(identity(dil.total_dim()), dil) - identity(3)), 1e-15);
    EXPECT_LT(max_norm(compress_middle(dil.matrix, dil) - T0.matrix()), 1e-15);
    EXPECT_THROW(compress_middle(identity(4), dil), DimensionMismatch);
}

TEST(BlockTrace, BlockDiagonalExample) {
    const auto dil = build_dilation(ContractionOperator(Matrix::Zero(1, 1)), 1);
    Matrix M = Matrix::Zero(3, 3);
    M(0, 0) = 1.0;
    M(1, 1) = 2.0;
    M(2, 2) = 3.0;
    const auto bt = block_trace(M, dil);
    EXPECT_EQ(bt.total, cplx(6.0));
    EXPECT_EQ(bt.top, cplx(1.0));
    EXPECT_EQ(bt.middle, cplx(2.0));
    EXPECT_EQ(bt.bottom, cplx(3.0));
}

TEST(BlockTrace, PartsSumToTrace) {
    Ensemble ens(105);
    const auto dil = build_dilation(ens.contraction(2), 3);
    const Matrix M = ens.ginibre(dil.total_dim());
    const auto bt = block_trace(M, dil);
    EXPECT_LT(std::abs(bt.top + bt.middle + bt.bottom - M.trace()), 1e-13);
    EXPECT_LT(std::abs(bt.total - M.trace()), 1e-15);
}

TEST(DilatedRemainder, MonomialCornerBlocksVanish) {
    Ensemble ens(106);
    const auto T0 = ens.contraction(3);
    const auto B = ens.generator(3, 1.0);
    for (int k : {-4, -1, 1, 3, 5}) {
        const auto r = dilated_remainder(T0, B, LaurentPolynomial::monomial(k), 2, 6);
        EXPECT_LT(r.corner_defect, 1e-10) << "k=" << k;
        EXPECT_LT(r.middle_gap, 1e-12) << "k=" << k;
        EXPECT_LT(r.trace_gap, 1e-12) << "k=" << k;
    }
}

TEST(DilatedRemainder, ConstantFunction) {
    Ensemble ens(107);
    const auto r = dilated_remainder(ens.contraction(3), ens.generator(3, 1.0), LaurentPolynomial::constant(2.0), 2, 3);
    EXPECT_LT(max_norm(r.r_u), 1e-15);
    EXPECT_LT(max_norm(r.r_t), 1e-15);
    EXPECT_LT(r.trace_gap, 1e-15);
}

TEST(DilatedRemainder, ZeroGenerator) {
    Ensemble ens(108);
    const auto f = ens.trig_polynomial(4);
    const auto r = dilated_remainder(ens.contraction(3), SelfAdjointOperator(Matrix::Zero(3, 3)), f, 3, 5);
    EXPECT_LT(max_norm(r.r_u), 1e-14);
    EXPECT_LT(max_norm(r.r_t), 1e-14);
    EXPECT_LT(r.trace_gap, 1e-14);
}

TEST(DilatedRemainder, RandomTraceIdentity) {
    Ensemble ens(109);
    for (int trial = 0; trial < 5; ++trial) {
        const auto T0 = ens.contraction(3);
        const auto B = ens.generator(3, 1.5);
        const auto f = ens.trig_polynomial(5);
        const auto r = dilated_remainder(T0, B, f, 2, 8);
        EXPECT_LT(r.trace_gap, 1e-8);
        EXPECT_LT(r.middle_gap, 1e-10);
    }
}

TEST(DilatedRemainder, ContractionRemainderAgainstOracle) {
    // r_t against a Taylor expansion of T_s^k computed with the Leibniz recursion of the oracle
    Ensemble ens(110);
    const auto T0 = ens.contraction(3);
    const auto B = ens.generator(3, 1.0);
    const int k = 3, n = 3;
    const auto r = dilated_remainder(T0, B, LaurentPolynomial::monomial(-k), n, 4);
    const Matrix T1 = oracle::expm(kI * B.matrix()) * T0.matrix();
    Matrix ref = oracle::power(Matrix(T1.adjoint()), k) - oracle::power(Matrix(T0.matrix().adjoint()), k);
    for (int a = 1; a < n; ++a) ref -= oracle::adjoint_power_derivative(T0.matrix(), B.matrix(), k, a) / factorial(a);
    EXPECT_LT(max_norm(r.r_t - ref), 1e-13);
}

TEST(DilatedRemainder, DepthTooSmall) {
    Ensemble ens(111);
    EXPECT_THROW(dilated_remainder(ens.contraction(2), ens.generator(2, 1.0), LaurentPolynomial::monomial(4), 2, 4),
                 DepthTooSmall);
}
