#pragma once

/** \file config.hpp
 *  \brief Tolerance record shared by every module.
 */

namespace shiftlab {

inline constexpr const char* kVersion = "1.0.0";

/** \brief All numerical thresholds in one place. Pass explicitly; nothing reads globals. */
struct Tolerances {
    double class_tol = 1e-10;          ///< operator-class membership (unitary, contraction, ...)
    double normal_tol = 1e-9;          ///< relative commutator defect accepted as normal
    double cluster_tol = 1e-8;         ///< eigenvalues closer than this share one projection
    double clamp_tol = 1e-10;          ///< negative eigenvalues above -clamp_tol are set to zero
    double unimodular_tol = 1e-8;      ///< points accepted as lying on the unit circle
    double eigenvalue_margin = 1e-8;   ///< min distance of spec(T) from 1 for inverse Cayley
    double real_separation = 1e-6;     ///< separation demanded by recursive real divided differences
    double helton_scale = 1.0;         ///< calibrated disk-measure constant (dz^dzbar = -2i scale dxdy)
    double generator_norm = 2.0;       ///< spectral-norm cap of random generators
    double contraction_margin = 0.05;  ///< random contractions are drawn with norm 1 - margin
    double min_separation = 1e-6;      ///< spectral separation of random instances
    long long max_terms = 100000000;   ///< refuse eigen-sums with more joint index tuples
};

}  // namespace shiftlab
