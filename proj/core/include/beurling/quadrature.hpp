#pragma once
// Adaptive Gauss-Kronrod (G7K15) quadrature over finite intervals.
//
// Panels are refined level-synchronously: every round evaluates all fresh
// panels (optionally in parallel), then splits the ones whose local error
// exceeds their width-proportional share of the tolerance.  The final sum
// runs over panels ordered by left endpoint, so results are deterministic
// and independent of thread count.

#include "beurling/util.hpp"

#include <functional>
#include <utility>

namespace beurling {

struct quad_result {
    double value = 0.0;
    double abs_error = 0.0;     // Kronrod-Gauss error estimate, summed
    double err_budget = 0.0;    // integral of the caller's error density
    std::size_t nevals = 0;
};

struct cquad_result {
    cplx value;
    double abs_error = 0.0;
    double err_budget = 0.0;
    std::size_t nevals = 0;
};

struct quad_options {
    double abstol = 1e-9;
    std::size_t max_panels = 1u << 18;
    bool parallel = false;    // evaluate panels of a round concurrently
};

quad_result integrate(const std::function<double(double)>& f, double a, double b,
                      const quad_options& opt);

// Integrand returns (value, error density); both are integrated.
quad_result integrate_err(const std::function<std::pair<double, double>(double)>& f, double a,
                          double b, const quad_options& opt);

cquad_result integrate_complex(const std::function<std::pair<cplx, double>(double)>& f, double a,
                               double b, const quad_options& opt);

// Logarithmic integral Li(x) = int_2^x dt/log t, x > 1 (signed for x < 2).
double log_integral(double x);

}    // namespace beurling
