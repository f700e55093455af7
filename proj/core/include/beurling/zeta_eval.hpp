#pragma once
// Evaluation of zeta_P(s) past the abscissa of convergence with rigorous,
// explicitly reported truncation bounds; mollifiers; the Gamma-smoothed
// contour identity.
//
// The continuation splits at split_x <= x_max:
//
//   F(s) = sum_{n <= split_x} w n^-s  +  A split_x^{1-s}/(s-1)
//        - E(split_x) split_x^-s  +  s int_{split_x}^{x_max} E(u) u^{-s-1} du
//        + [tail over (x_max, inf)],
//
// with E(u) = N(u) - A u.  The middle integral is exact: E is affine minus a
// step between consecutive atoms, so the per-interval antiderivatives are in
// closed form (the implementation sums their telescoped form).  The tail is
// where rigor-by-measurement enters:
//
//   plain mode:   tail dropped, err = |s| C_E x_max^{theta-sigma}/(sigma-theta)
//   refined mode: tail ~ tail_mean * x_max^-s added to the value; a second
//                 integration by parts bounds the rest by
//                 |s(s+1)| C_prim x_max^{2 theta - sigma - 1}/(sigma+1-2 theta)
//                 plus tail_mean_err * x_max^-sigma,
//
// where C_E, tail_mean, tail_mean_err, C_prim come from well_behaved_report.

#include "beurling/number_system.hpp"
#include "beurling/point_measure.hpp"
#include "beurling/util.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace beurling {

struct EvalResult {
    cplx value;
    double err = 0.0;    // rigorous truncation/quadrature bound (not fp rounding)
};

struct ContinuationConfig {
    double split_x = 0.0;    // 0: use x_max (pure head sum + tail model)
    double A = 1.0;
    double theta = 0.0;
    double C_E = 1.0;
    double quad_tol = 1e-6;
    bool refined = false;
    double tail_mean = 0.0;
    double tail_mean_err = 0.0;
    double C_prim = 0.0;
};

// Measure -> config via the empirical well-behavedness report; enables the
// refined tail model.
ContinuationConfig make_continuation_config(const PointMeasure& dN, double theta,
                                            std::optional<double> A_known = {},
                                            double quad_tol = 1e-6);
ContinuationConfig make_continuation_config(const NumberSystem& sys, double theta,
                                            double quad_tol = 1e-6);

// Continued evaluation; requires Re s > theta, |s-1| >= 1e-8.
EvalResult zeta_continued(const PointMeasure& dN, cplx s, const ContinuationConfig& cfg);
EvalResult zeta_continued(const NumberSystem& sys, cplx s, const ContinuationConfig& cfg);

// Term-wise s-derivative of the same formula (head picks up -log n factors,
// tail antiderivatives are differentiated analytically).
EvalResult zeta_derivative(const PointMeasure& dN, cplx s, const ContinuationConfig& cfg);
EvalResult zeta_derivative(const NumberSystem& sys, cplx s, const ContinuationConfig& cfg);

// ---------------------------------------------------------------------------
// Evaluator: a zeta function handed to contour/quadrature machinery.
// ---------------------------------------------------------------------------

struct Evaluator {
    std::function<EvalResult(cplx)> value;
    std::function<EvalResult(cplx)> derivative;    // empty: use finite differences
    std::string label;

    bool has_derivative() const { return bool(derivative); }
};

Evaluator reference_zeta_evaluator();
Evaluator rescaled_reference_evaluator(double theta);
// Holds a shared copy of the measure; results carry the continuation bounds.
Evaluator continuation_evaluator(std::shared_ptr<const PointMeasure> dN, ContinuationConfig cfg,
                                 std::string label = "continued");
Evaluator continuation_evaluator(const NumberSystem& sys, ContinuationConfig cfg);

// ---------------------------------------------------------------------------
// Mollifier M_X(s) = sum_{n <= X} mu(n) n^-s and the mollified coefficients
// of zeta_P * M_X (exact integer arithmetic on counts and mu sums).
// ---------------------------------------------------------------------------

cplx mollifier(const NumberSystem& sys, double X, cplx s);

// Coefficient measure of zeta_P(s) M_X(s): weight 1 at 1, exactly 0 on
// (1, X], bounded by the divisor weights beyond X.
PointMeasure mollified_coeffs(const NumberSystem& sys, double X);

// Extended-sense mollifier coefficients: convolution inverse of dN
// restricted to [1, X] (coincides with the mu measure for genuine systems).
PointMeasure mu_measure_upto(const PointMeasure& dN, double X);
PointMeasure mollified_coeffs(const PointMeasure& dN, double X);

// ---------------------------------------------------------------------------
// Gamma-smoothed line integral and the six-term identity.
// ---------------------------------------------------------------------------

struct LineIntegral {
    cplx value;          // int_{-Z}^{Z} zeta(c+i(t+v)) M(c+i(t+v)) Gamma(c-sigma+iv) Y^{c-sigma+iv} dv
    double err = 0.0;    // propagated evaluator error + discarded Gamma tail
    double Z = 0.0;
    std::size_t nevals = 0;
};

// c = (1+theta)/2; Z is chosen so the Gamma tail is <= quad_tol/10.
LineIntegral smoothing_line_integral(const Evaluator& zeta, const PointMeasure& muX, double theta,
                                     double sigma, double t, double Y, double quad_tol);

struct IdentityReport {
    double residual = 0.0;    // |LHS - RHS|
    double err = 0.0;         // propagated error budget
    cplx lhs, rhs;
    double Z = 0.0;
    std::size_t nevals = 0;
};

// e^{-1/Y} + sum_{n > X} a_n e^{-n/Y} n^-s
//   vs  A M_X(1) Gamma(1-s) Y^{1-s} + zeta_P(s) M_X(s) + (1/2pi) * line integral.
// Requires (1+theta)/2 < Re s < 1 and X <= Y <= sqrt(x_max).
IdentityReport smoothing_identity(const NumberSystem& sys, const ContinuationConfig& cfg, cplx s,
                                  double X, double Y);
IdentityReport smoothing_identity(const PointMeasure& dN, const PointMeasure& muX,
                                  const ContinuationConfig& cfg, cplx s, double X, double Y);

// |zeta(sigma+it)| / (|t|^{(1-sigma)/(1-theta)} log|t|); requires |t| >= 2
// and theta < sigma < 1.
struct ConvexityRatio {
    double ratio;
    double err;
};
ConvexityRatio convexity_ratio(const Evaluator& zeta, double theta, double sigma, double t);

}    // namespace beurling
