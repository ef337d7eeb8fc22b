#pragma once

/** \file dilation.hpp
 *  \brief Truncated Schaffer dilation of a contraction and the trace identities it carries.
 *
 *  Layout of the dilation space: N top copies of H, then H, then N bottom copies of H.
 *  Top block k sits at rows k*d, the middle block at N*d, bottom block k at (N+1+k)*d.
 */

#include "paths.hpp"

namespace shiftlab {

/** \brief [[S*, 0, 0], [D_{T*} P, T, 0], [-T* P, D_T, S]] with the shift truncated to depth N. */
struct SchafferDilation {
    Index inner_dim = 0;
    int depth = 0;
    Matrix matrix;

    Index total_dim() const { return inner_dim * (2 * depth + 1); }
    Index middle_offset() const { return inner_dim * depth; }
    Index bottom_offset() const { return inner_dim * (depth + 1); }
    Index side_dim() const { return inner_dim * depth; }
};

inline SchafferDilation build_dilation(const ContractionOperator& T0, int depth,
                                       double clamp_tol = Tolerances{}.clamp_tol) {
    if (depth < 1) throw InputError("dilation depth must be >= 1");
    const Index d = T0.dim();
    const auto defects = defect_pair(T0, clamp_tol);
    SchafferDilation out;
    out.inner_dim = d;
    out.depth = depth;
    out.matrix = Matrix::Zero(out.total_dim(), out.total_dim());
    const Index mid = out.middle_offset();
    const Index bot = out.bottom_offset();
    const Matrix I = identity(d);
    for (int k = 0; k + 1 < depth; ++k) {
        out.matrix.block(k * d, (k + 1) * d, d, d) = I;              // S* on the top copies
        out.matrix.block(bot + (k + 1) * d, bot + k * d, d, d) = I;  // S on the bottom copies
    }
    out.matrix.block(mid, 0, d, d) = defects.d_t_star;
    out.matrix.block(mid, mid, d, d) = T0.matrix();
    out.matrix.block(bot, 0, d, d) = -T0.matrix().adjoint();
    out.matrix.block(bot, mid, d, d) = defects.d_t;
    return out;
}

/// Middle d x d block of an operator on the dilation space.
inline Matrix compress_middle(const Matrix& M, const SchafferDilation& dil) {
    if (M.rows() != dil.total_dim() || M.cols() != dil.total_dim())
        throw DimensionMismatch("compress_middle: operator of dimension " + std::to_string(M.rows()) +
                                " on a dilation space of dimension " + std::to_string(dil.total_dim()));
    return M.block(dil.middle_offset(), dil.middle_offset(), dil.inner_dim, dil.inner_dim);
}

struct BlockTraces {
    cplx total;
    cplx top;
    cplx middle;
    cplx bottom;
};

inline BlockTraces block_trace(const Matrix& M, const SchafferDilation& dil) {
    if (M.rows() != dil.total_dim() || M.cols() != dil.total_dim())
        throw DimensionMismatch("block_trace: operator does not live on the dilation space");
    const Index side = dil.side_dim();
    return {M.trace(), M.block(0, 0, side, side).trace(),
            M.block(dil.middle_offset(), dil.middle_offset(), dil.inner_dim, dil.inner_dim).trace(),
            M.block(dil.bottom_offset(), dil.bottom_offset(), side, side).trace()};
}

/** \brief Dilation of T_0 with the path U_s = diag(I, e^{isB}, I) U_{T_0} and generator diag(0, B, 0). */
struct DilatedPath {
    SchafferDilation dilation;
    Matrix generator;
    MultiplicativePath path;
};

inline DilatedPath dilate_path(const ContractionOperator& T0, const SelfAdjointOperator& B, int depth,
                               const Tolerances& tol = {}) {
    require_same_dim(T0.matrix(), B.matrix(), "dilate_path");
    auto dil = build_dilation(T0, depth, tol.clamp_tol);
    Matrix A = Matrix::Zero(dil.total_dim(), dil.total_dim());
    A.block(dil.middle_offset(), dil.middle_offset(), dil.inner_dim, dil.inner_dim) = B.matrix();
    auto path = MultiplicativePath::unchecked(dil.matrix, SelfAdjointOperator(A, tol.class_tol), PathBase::unitary);
    return {std::move(dil), std::move(A), std::move(path)};
}

struct DilatedRemainder {
    Matrix r_u;           ///< remainder along the dilated path
    Matrix r_t;           ///< remainder along T_s = e^{isB} T_0
    double trace_gap;     ///< |Tr r_u - Tr r_t|
    double corner_defect; ///< largest entry of the top and bottom diagonal blocks of r_u
    double middle_gap;    ///< max-norm distance between the middle block of r_u and r_t
};

/// Remainder on the dilation space next to the contraction remainder. Depth must exceed max|deg f|.
inline DilatedRemainder dilated_remainder(const ContractionOperator& T0, const SelfAdjointOperator& B,
                                          const LaurentPolynomial& f, int n, int depth, const Tolerances& tol = {}) {
    const int K = f.max_abs_degree();
    if (depth < K + 1)
        throw DepthTooSmall("depth " + std::to_string(depth) + " < max|degree| + 1 = " + std::to_string(K + 1));
    const auto dp = dilate_path(T0, B, depth, tol);
    DilatedRemainder out;
    out.r_u = remainder_mult(dp.path, f, n).matrix;
    out.r_t = remainder_mult(MultiplicativePath(T0, B), f, n).matrix;
    const auto bt = block_trace(out.r_u, dp.dilation);
    const cplx via_blocks = bt.top + bt.middle + bt.bottom;
    out.trace_gap = std::abs(via_blocks - out.r_t.trace());
    const Index side = dp.dilation.side_dim();
    out.corner_defect = std::max(max_norm(out.r_u.block(0, 0, side, side)),
                                 max_norm(out.r_u.block(dp.dilation.bottom_offset(), dp.dilation.bottom_offset(),
                                                        side, side)));
    out.middle_gap = max_norm(compress_middle(out.r_u, dp.dilation) - out.r_t);
    return out;
}

}  // namespace shiftlab
