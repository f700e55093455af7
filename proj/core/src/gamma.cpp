#include "beurling/gamma.hpp"

#include <cmath>

namespace beurling {

namespace {

constexpr double pi = 3.141592653589793238462643383279502884;

// Lanczos coefficients for g = 607/128, n = 15 (Godfrey's set).  Empirical
// relative error of the rational part is ~1e-15; after the power/exp
// assembly we stay near 1e-13 over the strip we use.
constexpr double lanczos_g = 607.0 / 128.0;
constexpr double lanczos_c[15] = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5,
};

cplx gamma_positive_half(cplx z) {
    // Valid for Re z >= 0.5.
    const cplx zm1 = z - 1.0;
    cplx acc = lanczos_c[0];
    for (int k = 1; k < 15; ++k) acc += lanczos_c[k] / (zm1 + double(k));
    const cplx t = zm1 + lanczos_g + 0.5;
    return std::sqrt(2.0 * pi) * std::pow(t, zm1 + 0.5) * std::exp(-t) * acc;
}

}    // namespace

cplx gamma_complex(cplx z) {
    if (z.real() < 0.5) {
        // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
        return pi / (std::sin(pi * z) * gamma_positive_half(1.0 - z));
    }
    return gamma_positive_half(z);
}

}    // namespace beurling
