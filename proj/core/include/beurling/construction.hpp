#pragma once
// Discrete Beurling prime system whose zeta function has exactly the zeros
// of the rescaled zeta, for theta in [1/2, 1).
//
// Pipeline: split the rescaled prime measure at p^{m/(1-theta)} into integer
// multiplicities floor(a_{p,m}) (the system's primes) plus fractional
// leftovers pi_R; form Pi_R, its exponential dN_R, the convolution inverse
// dM_R, and the integer-counting measure dN_P = dN_theta * dM_R.  The zeta
// function factors as zeta_theta / zeta_R with zeta_R nonvanishing on
// Re s > 1 - theta, so the zero set is inherited.
//
// All locations come from one canonical power table (p, M) -> p^{M/(1-theta)},
// so atoms that coincide mathematically coincide bit-exactly.

#include "beurling/number_system.hpp"
#include "beurling/point_measure.hpp"
#include "beurling/util.hpp"
#include "beurling/zeta_eval.hpp"

#include <cstdint>

namespace beurling {

// a_{p,m} = (1/m) sum_{k | m} mu(k) (p^{m theta/(1-theta)})^{1/k}; positive
// for every p > 1, m >= 1.
double a_pm(double p, unsigned m, double theta);

struct PositivityScan {
    double min_f0 = 0.0;    // min over (m, u) of sum_{k|m} mu(k) u^{1/k}
    unsigned argmin_m = 0;
    double argmin_u = 0.0;
    double min_f1_at_1 = 0.0;          // min over m of sum mu(k)/k = prod (1 - 1/p)
    double cross_check_err = 0.0;      // max | sum mu(k)/k - prod_{p|m} (1-1/p) |
};

PositivityScan positivity_scan(unsigned m_max, const std::vector<double>& u_grid);

struct ConstructionOutput {
    double theta = 0.0;
    double x_max = 0.0;
    double prime_cap = 0.0;

    PointMeasure piP;     // integer multiplicities floor(a_{p,m})
    PointMeasure piR;     // fractional parts, weights in [0, 1)
    PointMeasure dPiR;    // sum_m (1/m) piR pushed to m-th powers
    PointMeasure dNR;     // exp_star(dPiR)
    PointMeasure dMR;     // convolution inverse of dNR
    PointMeasure dNP;     // dN_theta * dMR

    // Extended-support copy of dPiR used for Mellin evaluation; its tail
    // beyond ext_cap is bounded through Pi_R(x) <= C Li(x^{1-theta}).
    PointMeasure dPiR_ext;
    double ext_cap = 0.0;

    double zetaR_at_1 = 1.0;
    double zetaR_at_1_err = 0.0;
    double A_expected = 0.0;        // (1 - theta) / zetaR_at_1
    double Li_ratio_max = 0.0;      // sup over grid of Pi_R(x) / Li(x^{1-theta})
    double NR_ratio_max = 0.0;      // sup over grid of N_R(x) / x^{1-theta}
};

// prime_cap = 0 selects x_max^{1-theta} (larger primes contribute nothing).
ConstructionOutput build_construction(double theta, double x_max, double prime_cap = 0.0);

struct DensityVerifyReport {
    double density_constant = 0.0;    // sup |N_P - A x| / (x^theta (1 + [theta=1/2] log x))
    double slope = 0.0;               // through-origin LS fit of N_P
    double slope_rel_err = 0.0;       // |slope - A_expected| / A_expected
    std::vector<std::pair<double, double>> samples;
};

DensityVerifyReport verify_density(const ConstructionOutput& out, std::size_t grid_size = 200);

// zeta_P(s) = zeta_theta(s) exp(-mellin(dPiR, s)); requires
// Re s > 1 - theta + margin and s away from 1.
EvalResult zeta_P_eval(const ConstructionOutput& out, cplx s);

// Quotient-form evaluator (no derivative; contour code falls back to finite
// differences).
Evaluator construction_evaluator(std::shared_ptr<const ConstructionOutput> out);

}    // namespace beurling
