#pragma once
// Exact mean squares of general Dirichlet polynomials, moment quadratures of
// zeta_P on vertical lines, and inequality harnesses (continuous/discrete
// mean value theorems, the Halasz-Montgomery/Bessel bound, Gallagher's lemma,
// and the Montgomery-style conjecture experiment).
//
// The inequalities carry unspecified implied constants, so each harness
// reports the empirical constant lhs/rhs instead of asserting a bound --
// except the Bessel-type bound, which is constant-free and must hold up to
// rounding.

#include "beurling/number_system.hpp"
#include "beurling/util.hpp"
#include "beurling/zeta_eval.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace beurling {

struct DirichletPolynomial {
    std::vector<double> freqs;    // non-decreasing, >= 1
    std::vector<cplx> coeffs;

    DirichletPolynomial() = default;
    DirichletPolynomial(std::vector<double> fs, std::vector<cplx> cs);

    std::size_t size() const { return freqs.size(); }
    cplx at(cplx s) const;         // sum a_j freq_j^{-s}
    cplx at_it(double t) const;    // sum a_j freq_j^{-it}
    double max_freq() const { return freqs.empty() ? 1.0 : freqs.back(); }
    double min_freq() const { return freqs.empty() ? 1.0 : freqs.front(); }
};

struct MeanValueReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;    // lhs / rhs (inf when rhs = 0 < lhs)
    std::vector<std::pair<std::string, double>> params;
    std::optional<std::uint64_t> seed;
};

std::string to_json(const MeanValueReport& rep);

// Exact closed form for int_{T0}^{T0+T} |S(it)|^2 dt (diagonal T |a_j|^2 plus
// oscillatory cross terms, series-expanded near equal frequencies).
double poly_mean_square(const DirichletPolynomial& S, double T0, double T);

// lhs = mean square, rhs = (T + 1/eta) sum chi(n_j, eta N) |a_j|^2.
MeanValueReport mvt_check(const DirichletPolynomial& S, double T0, double T, double eta,
                          const NumberSystem& sys);

// Discrete variant over delta-well-spaced real points.
MeanValueReport discrete_mvt_check(const DirichletPolynomial& S, const std::vector<double>& ts,
                                   double eta, double delta, const NumberSystem& sys);
// Complex-point variant: Re s_r >= alpha, frequencies in [N, 2N], rhs scaled
// by N^{-2 alpha}.
MeanValueReport discrete_mvt_check(const DirichletPolynomial& S, const std::vector<cplx>& ss,
                                   double eta, double delta, const NumberSystem& sys,
                                   double alpha);

struct MomentReport {
    double value = 0.0;         // (1/T) int_0^T |f|^{2k}
    double err_budget = 0.0;    // integrated evaluator error contribution
    std::size_t nevals = 0;
};

// two_k is the (real) moment exponent 2k; set use_derivative to integrate
// |zeta'|^{2k} instead.  Throws numeric_error when the evaluator error
// budget dominates the computed moment.
MomentReport vertical_moment(const Evaluator& zeta, double sigma, double T, double two_k,
                             double quad_tol, bool use_derivative = false);

// Bessel-type bound with smoothing weights e^{-n/(2N)} - e^{-n/N}; the inner
// products are exact sums over the system table.  ratio <= 1 up to rounding,
// unconditionally.
MeanValueReport bombieri_check(const DirichletPolynomial& S, double N,
                               const std::vector<double>& ts, const NumberSystem& sys);

// lhs = sum |zeta(sigma + i t_r)|^2 over Z-spaced points, rhs the Gallagher
// integral of |zeta|^2 + |zeta zeta'| over [-T-Z, T+Z].
MeanValueReport gallagher_check(const Evaluator& zeta, double sigma,
                                const std::vector<double>& ts, double T, double Z,
                                double quad_tol = 1e-6);

struct MontgomeryReport {
    double nu = 0.0;
    double max_ratio = 0.0;
    std::vector<MeanValueReport> trials;    // one per seed
};

// Conjecture exploration (evidence only): lhs = int_0^T |sum_{n_j <= N} a_j
// n_j^{-it}|^{2 nu} dt with seeded |a_j| <= 1 draws, rhs = (T N^{nu theta} +
// N^nu) N^nu.
MontgomeryReport montgomery_experiment(const NumberSystem& sys, double N, double T, double nu,
                                       const std::vector<std::uint64_t>& seeds,
                                       double quad_tol = 1e-6);

}    // namespace beurling
