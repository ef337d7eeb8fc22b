// Extracts spectral-shift data for a random unitary path and compares predicted traces with
// directly computed Taylor remainders.

#include <cstdio>

#include "shiftlab/shiftlab.hpp"

int main() {
    using namespace shiftlab;
    Ensemble ens(2024);
    const auto U0 = ens.unitary(4);
    const auto A = ens.generator(4, 0.8);
    const int n = 3, M = 8;

    const auto ssf = extract_mult_unitary(U0, A, n, M);
    std::printf("eta_%d: %zu coefficients, L1 estimate %.6g, ||A||_%d^%d = %.6g\n", n, ssf.hat_eta_n.size(),
                eta_l1_estimate(ssf), n, n, std::pow(schatten_norm(A.matrix(), n), n));

    const MultiplicativePath path(U0, A);
    for (int i = 0; i < 5; ++i) {
        const auto f = ens.trig_polynomial(6);
        const cplx direct = remainder_mult(path, f, n).matrix.trace();
        const cplx predicted = predict_trace(ssf, f);
        std::printf("f%d  direct % .12f%+.12fi  predicted % .12f%+.12fi  |diff| %.2e\n", i, direct.real(),
                    direct.imag(), predicted.real(), predicted.imag(), std::abs(direct - predicted));
    }

    // contraction through the dilation
    const auto T0 = ens.contraction(3);
    const auto B = ens.generator(3, 0.5);
    const auto f = ens.trig_polynomial(4);
    const auto dr = dilated_remainder(T0, B, f, 2, 5);
    std::printf("dilation: trace gap %.2e, corner blocks %.2e, middle block gap %.2e\n", dr.trace_gap,
                dr.corner_defect, dr.middle_gap);
    return 0;
}
