#pragma once
// Riemann zeta oracle via Euler-Maclaurin, with analytic derivative and the
// affine-rescaled variant zeta((s - theta)/(1 - theta)).

#include "beurling/util.hpp"

namespace beurling {

struct em_result {
    cplx value;
    double err;    // remainder bound of the truncated Euler-Maclaurin tail
};

// Accurate to ~1e-12 absolute for -1 <= Re s <= 3, |Im s| <= 200 (and far
// beyond); throws numeric_error within 1e-8 of the pole s = 1.
em_result riemann_zeta_em(cplx s);
em_result riemann_zeta_deriv_em(cplx s);

inline cplx riemann_zeta(cplx s) { return riemann_zeta_em(s).value; }

// zeta_theta(s) = zeta((s - theta)/(1 - theta)); pole at s = 1.
em_result rescaled_zeta(double theta, cplx s);
em_result rescaled_zeta_deriv(double theta, cplx s);

}    // namespace beurling
