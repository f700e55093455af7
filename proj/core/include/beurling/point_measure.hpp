#pragma once
// Finite point measures on [1, x_max] under multiplicative convolution.
//
// A measure is a sorted list of atoms (location >= 1, weight).  Locations
// are compared bit-exactly: canonically constructed locations (table values,
// p^(m/(1-theta)) powers computed once, ...) collide exactly, and nothing
// else is ever merged.  Aggregation drops atoms whose weight falls below
// 1e-15 of the running maximum absolute weight, which keeps convolution
// dust from accumulating.
//
// All measures are immutable after construction and safe to share across
// threads.

#include "beurling/util.hpp"

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace beurling {

using atom_list = std::vector<std::pair<double, double>>;

class PointMeasure {
  public:
    PointMeasure() = default;
    // Canonicalizes: sorts, merges equal locations, drops dust, truncates
    // to x_max.  Throws validation_error on locations < 1 or x_max < 1.
    PointMeasure(atom_list atoms, double x_max);

    static PointMeasure dirac(double y, double weight = 1.0, double x_max = 0.0);
    static PointMeasure empty(double x_max) { return PointMeasure(atom_list{}, x_max); }

    std::size_t size() const { return locs_.size(); }
    bool is_empty() const { return locs_.empty(); }
    double x_max() const { return x_max_; }
    double location(std::size_t i) const { return locs_[i]; }
    double weight(std::size_t i) const { return weights_[i]; }
    std::span<const double> locations() const { return locs_; }
    std::span<const double> weights() const { return weights_; }
    std::span<const double> log_locations() const { return log_locs_; }

    // Sum of weights at locations <= x (0 for x < 1).  O(log n).
    double cumulative(double x) const;
    // Index of the first atom with location > x (== size() if none).
    std::size_t upper_index(double x) const;

    // sum_i w_i * loc_i^{-s}, compensated summation, chunk-parallel.
    cplx mellin(cplx s) const;

    PointMeasure scaled(double c) const;
    PointMeasure restricted(double new_x_max) const;

    friend PointMeasure operator+(const PointMeasure& a, const PointMeasure& b);

  private:
    std::vector<double> locs_;
    std::vector<double> weights_;
    std::vector<double> log_locs_;
    std::vector<double> prefix_;    // prefix_[i] = sum of weights_[0..i)
    double x_max_ = 1.0;

    void finalize();    // builds log_locs_ / prefix_
};

// Atom-by-atom products u*v <= x_max, aggregated.  O(#pairs log #pairs).
PointMeasure convolve(const PointMeasure& f, const PointMeasure& g, double x_max);

// delta_1 + sum_m pi^{*m} / m!, truncated at x_max.  Rejects atoms at (or
// within 1e-12 of) location 1, where the series would not terminate.
PointMeasure exp_star(const PointMeasure& pi, double x_max);

// Convolution inverse: m with m * n = delta_1 on [1, x_max], by recursive
// division over increasing locations.  Requires an atom at location 1 with
// |weight| >= 1e-300.
PointMeasure conv_inverse(const PointMeasure& n, double x_max);

// m-fold convolution power (m >= 0; m = 0 gives delta_1).
PointMeasure convolution_power(const PointMeasure& f, unsigned m, double x_max);

// Largest |weight(a) - weight(b)| over the union of atom locations.
double measure_max_diff(const PointMeasure& a, const PointMeasure& b);

// CSV with header "location,weight", shortest round-trip decimals.
void write_measure_csv(std::ostream& os, const PointMeasure& m);
PointMeasure read_measure_csv(std::istream& is, double x_max = 0.0);    // 0: use max location

}    // namespace beurling
