#pragma once
// Shared plumbing: error types, compensated summation, deterministic
// parallel loops, seedable RNG, and round-trip number formatting.

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace beurling {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Errors.  validation_error maps to CLI exit code 2, everything else to 3.
// ---------------------------------------------------------------------------

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct validation_error : error {
    using error::error;
};
// Enumeration or convolution would exceed the configured row budget.
struct budget_error : error {
    using error::error;
};
// A numerical contract failed (pole proximity, quadrature breakdown, ...).
struct numeric_error : error {
    using error::error;
};
// Contour sampling hit a suspected zero on the boundary, or the evaluator's
// error bound is too large relative to |f| along the contour.
struct boundary_error : numeric_error {
    using numeric_error::numeric_error;
};
struct nonconvergence_error : numeric_error {
    using numeric_error::numeric_error;
};

// ---------------------------------------------------------------------------
// Compensated (Kahan–Neumaier) summation.
// ---------------------------------------------------------------------------

class kahan_sum {
  public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0, comp_ = 0.0;
};

class kahan_csum {
  public:
    void add(cplx z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    cplx value() const { return {re_.value(), im_.value()}; }

  private:
    kahan_sum re_, im_;
};

// ---------------------------------------------------------------------------
// Deterministic parallelism.
//
// Work is split into fixed-size chunks determined only by (n, grain); the
// chunk structure never depends on how many threads execute, so reductions
// that combine per-chunk results in chunk order are bit-reproducible for any
// thread count (including --threads 1).
// ---------------------------------------------------------------------------

void set_max_threads(unsigned n);    // 0 restores hardware default
unsigned max_threads();

// body(chunk_index, begin, end); chunks are [k*grain, min(n,(k+1)*grain)).
void parallel_chunks(std::size_t n, std::size_t grain,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

// Convenience: map chunk -> double and sum in chunk order.
double parallel_sum(std::size_t n, std::size_t grain,
                    const std::function<double(std::size_t, std::size_t)>& chunk_sum);
cplx parallel_csum(std::size_t n, std::size_t grain,
                   const std::function<cplx(std::size_t, std::size_t)>& chunk_sum);

// ---------------------------------------------------------------------------
// Seedable RNG for the randomized harnesses.  Every report records its seed.
// ---------------------------------------------------------------------------

class rng64 {
  public:
    explicit rng64(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    std::uint64_t next();
    double uniform();                      // [0, 1)
    double uniform(double a, double b);    // [a, b)
    cplx unit_disc();                      // |z| <= 1

  private:
    std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// Formatting: shortest decimal that round-trips binary64, for CSV/JSON.
// ---------------------------------------------------------------------------

std::string fmt_double(double x);
std::string fmt_complex(cplx z);    // "re+imi" / "re-imi"

std::vector<double> logspace(double lo, double hi, std::size_t n);

}    // namespace beurling
