#pragma once
// Argument-principle zero counting and localization, density tables N(alpha, T),
// exponent fits, and the type I / type II zero classification.
//
// Contours are walked with phase-tracking step control: a segment is accepted
// only when the phase increment stays below pi/2 and |delta zeta| below half
// of |zeta|, which pins the argument branch.  Counting requires the
// evaluator's error bound to stay below half of |zeta| along the contour;
// a sample with |zeta| < 3 err aborts with boundary_error, and the caller is
// expected to perturb the rectangle (the library never shifts user input).

#include "beurling/number_system.hpp"
#include "beurling/point_measure.hpp"
#include "beurling/util.hpp"
#include "beurling/zeta_eval.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace beurling {

struct Rectangle {
    double alpha;          // left edge (>= alpha zero count)
    double sigma_right;    // right edge
    double t_low, t_high;

    // theta < alpha < sigma_right, t_low < t_high, boundary avoids s = 1.
    void validate(double theta) const;
};

enum class ZeroClass { TypeI, TypeII, Neither, Unclassified };

struct ZeroRecord {
    cplx rho;
    double residual;    // |zeta(rho)| + evaluation error after refinement
    ZeroClass classification = ZeroClass::Unclassified;
};

struct ContourOptions {
    std::size_t max_edge_samples = 1u << 20;
    double refine_tol = 1e-8;      // localization target |zeta(rho)|
    double min_cell = 5e-4;        // quadrisection floor (multiple zeros)
    bool expect_pole_at_one = true;    // simple pole of zeta_P at s = 1
};

// Zeros minus poles inside is the winding number; with the standard systems
// the rectangle excludes s = 1 (validated), so this is the zero count with
// multiplicity.
std::int64_t winding_count(const Evaluator& zeta, const Rectangle& rect, double theta,
                           const ContourOptions& opt = {});

// Recursive quadrisection + secant/Newton refinement; the record list length
// always equals the rectangle's winding count.
std::vector<ZeroRecord> localize_zeros(const Evaluator& zeta, const Rectangle& rect, double theta,
                                       const ContourOptions& opt = {});

// ---------------------------------------------------------------------------
// Density tables
// ---------------------------------------------------------------------------

struct DensityTable {
    std::vector<double> alphas;
    std::vector<double> Ts;                            // ascending
    std::vector<std::vector<std::int64_t>> counts;     // [alpha][T]
    std::vector<std::int64_t> strip_counts;            // zeros with |gamma| <= t0, per alpha
    std::vector<bool> real_zero_flag;                  // odd strip count: gamma = 0 zero present
    double t0 = 0.0;
    double sigma_cap = 1.1;
};

// N(alpha, T) = #{beta >= alpha, |gamma| <= T}: upper rectangles doubled by
// conjugate symmetry plus a symmetric strip around the real axis (gamma = 0
// zeros counted once; the strip encloses the pole at s = 1, corrected for).
DensityTable density_table(const Evaluator& zeta, std::vector<double> alphas,
                           std::vector<double> Ts, double theta,
                           const ContourOptions& opt = {});

struct DensityFitRow {
    double alpha;
    std::optional<double> c_hat;    // LS slope of log N against log T (>= 3 points)
    double c_paper;                 // 4(1-alpha)/(3-2alpha-theta)
    std::size_t points_used;
};

std::vector<DensityFitRow> fit_density_exponent(const DensityTable& table, double theta);

inline double density_exponent_bound(double alpha, double theta) {
    return 4.0 * (1.0 - alpha) / (3.0 - 2.0 * alpha - theta);
}

// Expected zero count of the rescaled system on its critical line up to
// height T: the classical counting asymptotic transferred through the affine
// zero map (both half-planes, secondary term included; at desk heights the
// main term alone overshoots badly).
double critical_line_count_asymptotic(double theta, double T);

// ---------------------------------------------------------------------------
// Local window statistics and classification
// ---------------------------------------------------------------------------

struct LocalWindowReport {
    double max_ratio = 0.0;    // max over unit windows of count / log T
    double window_t = 0.0;     // left endpoint of the extremal window
    std::int64_t zero_count = 0;
};

// Slides unit windows over gamma in [2, T] at level alpha.
LocalWindowReport local_window_check(const Evaluator& zeta, double alpha, double T, double theta,
                                     const ContourOptions& opt = {});

struct ClassifyReport {
    ZeroClass cls = ZeroClass::Unclassified;
    double type1 = 0.0;               // |sum_{X < n <= Y^2} a_n e^{-n/Y} n^-rho|
    double type2 = 0.0;               // |Gamma-smoothed line integral|
    bool type2_evaluated = false;     // false when beta is on the critical line
    double threshold1 = 1.0 / 6.0;
    double threshold2 = 0.0;          // 2 pi / 6
};

// Requires rho to be a refined zero (|zeta(rho)| <= zero_tol).  The contour
// route needs beta > (1+theta)/2; zeros sitting on the critical line are
// decided through the Dirichlet-polynomial route alone.
ClassifyReport classify_zero(const Evaluator& zeta, const PointMeasure& coeffs,
                             const PointMeasure& muX, double theta, cplx rho, double X, double Y,
                             double quad_tol = 1e-6, double zero_tol = 1e-5);
// theta is explicit (theta_hint is metadata and never branched on silently).
ClassifyReport classify_zero(const Evaluator& zeta, const NumberSystem& sys, double theta,
                             cplx rho, double X, double Y, double quad_tol = 1e-6,
                             double zero_tol = 1e-5);

}    // namespace beurling
