#pragma once

/** \file divided_difference.hpp
 *  \brief Divided differences of Laurent polynomials by monomial closed forms, plus the
 *         plain recursive table for separated points.
 */

#include <span>
#include <vector>

#include "laurent.hpp"

namespace shiftlab {

/// h_0 ... h_maxdeg, the complete homogeneous symmetric polynomials of \p pts.
template <class T>
std::vector<std::complex<T>> complete_homogeneous(std::span<const std::complex<T>> pts, int maxdeg) {
    std::vector<std::complex<T>> h(std::size_t(std::max(maxdeg, -1) + 1), std::complex<T>(0));
    if (maxdeg < 0) return h;
    h[0] = 1;
    // Adding points one at a time: h_d(z_0..z_j) = h_d(z_0..z_{j-1}) + z_j h_{d-1}(z_0..z_j).
    for (const auto& z : pts)
        for (int d = 1; d <= maxdeg; ++d) h[std::size_t(d)] += z * h[std::size_t(d - 1)];
    return h;
}

/** \brief Divided difference of every monomial of \p f at \p pts, summed with the coefficients.
 *
 *  For m >= 0, (z^m)^{[k]} = h_{m-k}(z_0..z_k). For m = -p < 0,
 *  (z^{-p})^{[k]} = (-1)^k (z_0 ... z_k)^{-1} h_{p-1}(1/z_0 .. 1/z_k).
 *  Both hold for coincident points, so confluence needs no special case. Points must be
 *  nonzero when f has negative degrees.
 */
template <class T>
std::complex<T> laurent_divided_difference(const LaurentPolynomial& f, std::span<const std::complex<T>> pts) {
    using C = std::complex<T>;
    if (pts.empty()) throw InputError("divided difference needs at least one point");
    const int k = int(pts.size()) - 1;
    C acc(0);
    if (f.empty()) return acc;
    const int top = f.max_degree() - k;
    if (top >= 0) {
        const auto h = complete_homogeneous<T>(pts, top);
        for (const auto& [m, c] : f.coeffs())
            if (m >= k) acc += C(c) * h[std::size_t(m - k)];
    }
    const int bottom = -f.min_degree() - 1;
    if (f.min_degree() < 0) {
        std::vector<C> inv(pts.size());
        C prod(1);
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (pts[j] == C(0)) throw InputError("negative powers evaluated at zero");
            inv[j] = C(1) / pts[j];
            prod *= inv[j];
        }
        const auto h = complete_homogeneous<T>(std::span<const C>(inv), bottom);
        const T sign = (k % 2 == 0) ? T(1) : T(-1);
        for (const auto& [m, c] : f.coeffs())
            if (m < 0) acc += C(c) * sign * prod * h[std::size_t(-m - 1)];
    }
    return acc;
}

inline cplx laurent_divided_difference(const LaurentPolynomial& f, std::initializer_list<cplx> pts) {
    std::vector<cplx> v(pts);
    return laurent_divided_difference<double>(f, std::span<const cplx>(v));
}

/// f^{[n]} at n+1 points of the unit circle.
inline cplx divided_difference(const LaurentPolynomial& f, std::span<const cplx> pts,
                               double unimodular_tol = Tolerances{}.unimodular_tol) {
    for (const auto& z : pts)
        if (std::abs(std::abs(z) - 1.0) > unimodular_tol)
            throw PointOffCircle("|z| = " + std::to_string(std::abs(z)));
    return laurent_divided_difference<double>(f, pts);
}

inline cplx divided_difference(const LaurentPolynomial& f, std::initializer_list<cplx> pts,
                               double unimodular_tol = Tolerances{}.unimodular_tol) {
    std::vector<cplx> v(pts);
    return divided_difference(f, std::span<const cplx>(v), unimodular_tol);
}

/** \brief Recursive divided difference of an arbitrary scalar function at distinct points.
 *
 *  Raises SpectrumTooClustered when two points are closer than \p separation.
 */
template <class F>
cplx recursive_divided_difference(F&& func, std::span<const cplx> pts, double separation) {
    const std::size_t n = pts.size();
    if (n == 0) throw InputError("divided difference needs at least one point");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (std::abs(pts[a] - pts[b]) < separation)
                throw SpectrumTooClustered("points " + std::to_string(a) + " and " + std::to_string(b) +
                                           " are closer than " + std::to_string(separation));
    std::vector<cplx> table(n);
    for (std::size_t j = 0; j < n; ++j) table[j] = func(pts[j]);
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t j = 0; j + level < n; ++j)
            table[j] = (table[j] - table[j + 1]) / (pts[j] - pts[j + level]);
    return table[0];
}

}  // namespace shiftlab
