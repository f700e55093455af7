#include "beurling/reference_zeta.hpp"

#include <cmath>

namespace beurling {

namespace {

// B_{2k} / (2k)! for k = 1..13.
constexpr double bern_over_fact[13] = {
    8.3333333333333333e-02,  -1.3888888888888889e-03, 3.3068783068783069e-05,
    -8.2671957671957672e-07, 2.0876756987868099e-08,  -5.2841901386874932e-10,
    1.3382536530684679e-11,  -3.3896802963225829e-13, 8.5860620562778446e-15,
    -2.1748686985580619e-16, 5.5090028283602295e-18,  -1.3954464685812522e-19,
    3.5347070396294675e-21,
};

void check_pole(cplx s) {
    if (std::abs(s - cplx(1.0, 0.0)) < 1e-8)
        throw numeric_error("zeta evaluation too close to the pole s = 1");
}

struct em_core {
    cplx value;
    cplx deriv;
    double err_value;
    double err_deriv;
};

// Euler-Maclaurin with N initial terms and K correction terms:
//   zeta(s) = sum_{n<N} n^-s + N^{1-s}/(s-1) + N^-s/2
//           + sum_k B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1} + R_K,
// |R_K| <= |next term| * |(s+2K+1)/(sigma+2K+1)|.  The derivative is the
// term-wise s-derivative; the rising products and their derivatives are
// accumulated without divisions so real s <= 0 is safe.
em_core euler_maclaurin(cplx s, int N, int K) {
    kahan_csum head, dhead;
    for (int n = 1; n < N; ++n) {
        const double ln = std::log(double(n));
        const cplx p = std::exp(-s * ln);
        head.add(p);
        dhead.add(-ln * p);
    }
    const double lnN = std::log(double(N));
    const cplx Nms = std::exp(-s * lnN);            // N^-s
    const cplx N1ms = double(N) * Nms;              // N^{1-s}
    const cplx sm1 = s - 1.0;

    cplx value = head.value() + N1ms / sm1 + 0.5 * Nms;
    cplx deriv = dhead.value() + (-lnN * N1ms / sm1 - N1ms / (sm1 * sm1)) - 0.5 * lnN * Nms;

    // prod = s(s+1)...(s+m), dprod = d/ds prod, advanced incrementally.
    cplx prod = 1.0, dprod = 0.0;
    int j = 0;    // next factor index
    double tail_mag = 0.0, dtail_mag = 0.0;
    for (int k = 1; k <= K + 1; ++k) {
        while (j <= 2 * k - 2) {
            dprod = dprod * (s + double(j)) + prod;
            prod = prod * (s + double(j));
            ++j;
        }
        const cplx npow = Nms * std::pow(double(N), 1.0 - 2.0 * k);    // N^{-s-2k+1}
        const cplx term = bern_over_fact[k - 1] * prod * npow;
        const cplx dterm = bern_over_fact[k - 1] * (dprod - lnN * prod) * npow;
        if (k <= K) {
            value += term;
            deriv += dterm;
        } else {
            tail_mag = std::abs(term);
            dtail_mag = std::abs(dterm);
        }
    }
    const double slack =
        std::abs(s + double(2 * K + 1)) / std::max(1.0, s.real() + double(2 * K + 1));
    return {value, deriv, tail_mag * slack, dtail_mag * slack};
}

em_core evaluate(cplx s) {
    check_pole(s);
    int N = std::max(18, int(std::ceil(std::abs(s) * 0.5)) + 6);
    const int K = 12;
    for (int attempt = 0; attempt < 4; ++attempt) {
        em_core r = euler_maclaurin(s, N, K);
        if (r.err_value < 1e-12 && r.err_deriv < 1e-11) return r;
        N = N * 3 / 2 + 8;
    }
    return euler_maclaurin(s, N, K);
}

}    // namespace

em_result riemann_zeta_em(cplx s) {
    em_core r = evaluate(s);
    return {r.value, r.err_value};
}

em_result riemann_zeta_deriv_em(cplx s) {
    em_core r = evaluate(s);
    return {r.deriv, r.err_deriv};
}

em_result rescaled_zeta(double theta, cplx s) {
    if (!(theta >= 0.0 && theta < 1.0)) throw validation_error("rescaled_zeta: theta in [0,1)");
    return riemann_zeta_em((s - theta) / (1.0 - theta));
}

em_result rescaled_zeta_deriv(double theta, cplx s) {
    if (!(theta >= 0.0 && theta < 1.0)) throw validation_error("rescaled_zeta: theta in [0,1)");
    em_result r = riemann_zeta_deriv_em((s - theta) / (1.0 - theta));
    return {r.value / (1.0 - theta), r.err / (1.0 - theta)};
}

}    // namespace beurling
