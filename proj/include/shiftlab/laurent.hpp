#pragma once

/** \file laurent.hpp
 *  \brief Laurent polynomials on the unit circle: coefficients, derivatives, class norms,
 *         analytic splitting, contour pairing and Poisson extension to the disk.
 */

#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <utility>

#include "errors.hpp"
#include "linops.hpp"

namespace shiftlab {

/// z^k by repeated squaring; negative k inverts.
template <class T>
std::complex<T> ipow(std::complex<T> z, int k) {
    std::complex<T> result(1), base = z;
    unsigned e = unsigned(k < 0 ? -k : k);
    while (e) {
        if (e & 1u) result *= base;
        e >>= 1u;
        if (e) base *= base;
    }
    return k < 0 ? std::complex<T>(1) / result : result;
}

/** \brief Finitely supported map k -> \hat f(k). Zero coefficients are never stored. */
class LaurentPolynomial {
public:
    using Map = std::map<int, cplx>;

    LaurentPolynomial() = default;
    explicit LaurentPolynomial(const Map& coeffs) {
        for (const auto& [k, c] : coeffs) set(k, c);
    }
    static LaurentPolynomial monomial(int k, cplx c = 1.0) {
        LaurentPolynomial p;
        p.set(k, c);
        return p;
    }
    static LaurentPolynomial constant(cplx c) { return monomial(0, c); }

    void set(int k, cplx c) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw InputError("non-finite Laurent coefficient at degree " + std::to_string(k));
        if (c == cplx(0.0)) c_.erase(k);
        else c_[k] = c;
    }
    void add(int k, cplx c) { set(k, coeff(k) + c); }
    cplx coeff(int k) const {
        auto it = c_.find(k);
        return it == c_.end() ? cplx(0.0) : it->second;
    }
    const Map& coeffs() const { return c_; }
    bool empty() const { return c_.empty(); }
    int min_degree() const { return c_.empty() ? 0 : c_.begin()->first; }
    int max_degree() const { return c_.empty() ? 0 : c_.rbegin()->first; }
    /// max |k| over the support.
    int max_abs_degree() const { return std::max(std::abs(min_degree()), std::abs(max_degree())); }

    cplx operator()(cplx z) const {
        cplx acc = 0.0;
        for (const auto& [k, c] : c_) acc += c * ipow(z, k);
        return acc;
    }

    LaurentPolynomial& operator+=(const LaurentPolynomial& o) {
        for (const auto& [k, c] : o.c_) add(k, c);
        return *this;
    }
    LaurentPolynomial& operator-=(const LaurentPolynomial& o) {
        for (const auto& [k, c] : o.c_) add(k, -c);
        return *this;
    }
    LaurentPolynomial& operator*=(cplx s) {
        Map tmp;
        for (const auto& [k, c] : c_) tmp[k] = c * s;
        c_.clear();
        for (const auto& [k, c] : tmp) set(k, c);
        return *this;
    }
    friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
    friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
    friend LaurentPolynomial operator*(LaurentPolynomial a, cplx s) { return a *= s; }
    friend LaurentPolynomial operator*(cplx s, LaurentPolynomial a) { return a *= s; }
    friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        LaurentPolynomial out;
        for (const auto& [k, c] : a.c_)
            for (const auto& [l, d] : b.c_) out.add(k + l, c * d);
        return out;
    }
    friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) { return a.c_ == b.c_; }

    std::string describe() const {
        std::string s;
        for (const auto& [k, c] : c_) {
            if (!s.empty()) s += " + ";
            s += "(" + std::to_string(c.real()) + (c.imag() < 0 ? "" : "+") + std::to_string(c.imag()) +
                 "i)z^" + std::to_string(k);
        }
        return s.empty() ? "0" : s;
    }

private:
    Map c_;
};

/// m (m-1) ... (m-k+1); equals 1 for k = 0.
inline double falling_factorial(int m, int k) {
    double out = 1.0;
    for (int j = 0; j < k; ++j) out *= double(m - j);
    return out;
}

/// Exact coefficients of the k-th complex derivative.
inline LaurentPolynomial derivative(const LaurentPolynomial& f, int k) {
    if (k < 0) throw InputError("derivative order must be >= 0");
    LaurentPolynomial out;
    for (const auto& [m, c] : f.coeffs()) out.add(m - k, falling_factorial(m, k) * c);
    return out;
}

/// sum_k |k|^n |\hat f(k)|.
inline double class_norm(const LaurentPolynomial& f, int n) {
    double acc = 0.0;
    for (const auto& [k, c] : f.coeffs()) acc += std::pow(std::abs(double(k)), n) * std::abs(c);
    return acc;
}

/// (degrees >= 0, degrees <= -1).
inline std::pair<LaurentPolynomial, LaurentPolynomial> split_plus_minus(const LaurentPolynomial& f) {
    LaurentPolynomial plus, minus;
    for (const auto& [k, c] : f.coeffs()) (k >= 0 ? plus : minus).set(k, c);
    return {plus, minus};
}

/// Counter-clockwise contour integral of f(z) eta(z) dz over the unit circle.
inline cplx contour_pair(const LaurentPolynomial& f, const LaurentPolynomial& eta) {
    cplx acc = 0.0;
    for (const auto& [k, c] : f.coeffs()) acc += c * eta.coeff(-k - 1);
    return 2.0 * kPi * kI * acc;
}

/** \brief Point of the closed unit disk. */
class DiskPoint {
public:
    explicit DiskPoint(cplx z) : z_(z) {
        if (!(std::abs(z) <= 1.0 + 1e-15)) throw InputError("point outside the closed unit disk");
    }
    cplx z() const { return z_; }

private:
    cplx z_;
};

struct PoissonValue {
    cplx value;
    cplx d_dz;     ///< sum_{n>=1} n \hat f(n) z^{n-1}
    cplx d_dzbar;  ///< sum_{n>=1} n \hat f(-n) zbar^{n-1}
};

/// Harmonic extension \hat f(0) + sum \hat f(-n) zbar^n + sum \hat f(n) z^n with its Wirtinger partials.
inline PoissonValue poisson_eval(const LaurentPolynomial& f, const DiskPoint& p) {
    const cplx z = p.z();
    const cplx zb = std::conj(z);
    PoissonValue out{0.0, 0.0, 0.0};
    for (const auto& [k, c] : f.coeffs()) {
        if (k == 0) {
            out.value += c;
        } else if (k > 0) {
            out.value += c * ipow(z, k);
            out.d_dz += double(k) * c * ipow(z, k - 1);
        } else {
            const int n = -k;
            out.value += c * ipow(zb, n);
            out.d_dzbar += double(n) * c * ipow(zb, n - 1);
        }
    }
    return out;
}

/** \brief f(X) = sum_{k>=0} \hat f(k) X^k + sum_{k<0} \hat f(k) (X*)^{|k|}.
 *
 *  This is the usual functional calculus for unitaries and the analytic/anti-analytic
 *  calculus for contractions.
 */
inline Matrix apply_function(const LaurentPolynomial& f, const Matrix& X) {
    require_square(X, "apply_function argument");
    Matrix out = Matrix::Zero(X.rows(), X.cols());
    if (f.empty()) return out;
    const int up = std::max(0, f.max_degree());
    const int down = std::max(0, -f.min_degree());
    const auto pos = power_table(X, up);
    const auto neg = power_table(X.adjoint(), down);
    for (const auto& [k, c] : f.coeffs()) out += c * (k >= 0 ? pos[std::size_t(k)] : neg[std::size_t(-k)]);
    return out;
}

}  // namespace shiftlab
