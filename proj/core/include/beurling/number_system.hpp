#pragma once
// Beurling number systems: a prime list plus the exhaustively enumerated
// table of generalized integers <= x_max with per-value aggregates.
//
// Enumeration runs over non-decreasing prime-index sequences driven by a
// priority queue keyed on the partial product, so every multiset of prime
// copies is generated exactly once and identical values (bit-equal doubles)
// aggregate into (count, mu_sum).  Partial products are accumulated left to
// right in sorted-index order, which makes the value of a multiset canonical.
// Values are merged only when bit-identical; nearby values stay distinct.

#include "beurling/point_measure.hpp"
#include "beurling/util.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace beurling {

struct PrimeList {
    // Strictly increasing values > 1 with multiplicities >= 1.
    std::vector<double> values;
    std::vector<std::uint32_t> multiplicities;

    PrimeList() = default;
    PrimeList(std::vector<double> vals, std::vector<std::uint32_t> mults);
    static PrimeList simple(std::vector<double> vals);    // all multiplicities 1

    std::size_t distinct() const { return values.size(); }
    // Number of primes <= x, counted with multiplicity.
    double count_upto(double x) const;
    double smallest() const { return values.empty() ? 0.0 : values.front(); }
};

struct SystemRow {
    double value;
    std::int64_t count;     // number of distinct factorization multisets
    std::int64_t mu_sum;    // sum of mu over those multisets
};

class NumberSystem {
  public:
    NumberSystem(PrimeList primes, double x_max, std::vector<SystemRow> table,
                 std::optional<double> theta_hint = {}, std::optional<double> known_density = {});

    const PrimeList& primes() const { return primes_; }
    double x_max() const { return x_max_; }
    const std::vector<SystemRow>& table() const { return table_; }
    std::optional<double> theta_hint() const { return theta_hint_; }
    // Exact density A when mathematically known (1 for the rational system).
    std::optional<double> known_density() const { return known_density_; }

    // N_P(x): generalized integers <= x counted with multiplicity.
    double N(double x) const;
    // pi_P(x): primes <= x with multiplicity.
    double pi(double x) const { return primes_.count_upto(x); }
    // Pi(x) = sum_m pi_P(x^{1/m}) / m.
    double Pi(double x) const;
    // Cluster count: table rows with |value - x| <= lambda (closed interval).
    std::int64_t chi(double x, double lambda) const;

    // dN: weight = count at each value.  dMu: weight = mu_sum (zeros omitted).
    const PointMeasure& count_measure() const { return count_measure_; }
    const PointMeasure& mu_measure() const { return mu_measure_; }

  private:
    PrimeList primes_;
    double x_max_;
    std::vector<SystemRow> table_;
    std::vector<double> values_;    // table values, for binary search
    std::vector<std::int64_t> count_prefix_;
    std::optional<double> theta_hint_;
    std::optional<double> known_density_;
    PointMeasure count_measure_;
    PointMeasure mu_measure_;
};

// Extended-sense system: a pair of point measures (dN, dPi) with
// mellin(dN, s) = exp(mellin(dPi, s)) inside truncation error.
struct ExtendedSystem {
    PointMeasure dN;
    PointMeasure dPi;
    double theta;
    std::optional<double> known_density;
};

inline constexpr std::size_t default_row_budget = 10'000'000;

// Exhaustive enumeration of all products of prime copies <= x_max.
NumberSystem build_system(const PrimeList& primes, double x_max,
                          std::size_t row_budget = default_row_budget);

// The rational integers (sieve fast path; equals build_system on the sieved
// primes, which the tests check).
NumberSystem rational_system(double x_max, std::size_t row_budget = default_row_budget);

// dN_theta = sum_n n^{theta/(1-theta)} delta at n^{1/(1-theta)};
// dPi_theta = sum_{p,m} (p^{m theta/(1-theta)}/m) delta at p^{m/(1-theta)}.
ExtendedSystem rescaled_system(double theta, double x_max);

enum class CountKind { N, pi, Pi };

double counting(const NumberSystem& sys, CountKind kind, double x);
double counting(const ExtendedSystem& sys, CountKind kind, double x);    // pi unsupported

// ---------------------------------------------------------------------------
// Empirical well-behavedness: N(x) = A x + O(x^theta) on a log-spaced grid.
//
// Beyond the fitted slope A_hat and sup constant C_hat, the report measures a
// tail model used by the analytic continuation to bound the discarded
// remainder:  E(u) = N(u) - A u is decomposed as tail_mean + fluctuation,
// and C_prim bounds |integral of the fluctuation| / u^{2 theta} exactly over
// the tail window (the integrals of the piecewise-affine E are closed-form).
// ---------------------------------------------------------------------------

struct WellBehavedReport {
    double A_hat = 0.0;
    double C_hat = 0.0;            // sup |N - A x| / x^theta over the grid
    double tail_mean = 0.0;        // mean of E over the tail window
    double tail_mean_err = 0.0;    // half-window disagreement of that mean
    double C_prim = 0.0;           // sup |int (E - tail_mean)| / u^{2 theta}
    std::vector<std::pair<double, double>> samples;    // (x, N(x)) grid
};

WellBehavedReport well_behaved_report(const PointMeasure& dN, double theta,
                                      std::optional<double> A_known = {},
                                      std::size_t grid_size = 256);
WellBehavedReport well_behaved_report(const NumberSystem& sys, double theta,
                                      std::size_t grid_size = 256);

// Divisor measure d = dN * dN truncated at x_max; 2k-fold via power.
PointMeasure divisor_measure(const NumberSystem& sys);
PointMeasure divisor_power_measure(const NumberSystem& sys, unsigned k);

// CSV: system rows "value,count,mu_sum"; prime import "value,multiplicity".
void write_system_csv(std::ostream& os, const NumberSystem& sys);
PrimeList read_primes_csv(std::istream& is);

}    // namespace beurling
