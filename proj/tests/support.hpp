#pragma once
// Shared test helpers and independent oracles.  Everything here must stay
// independent of the implementation path it is used to check.

#include "beurling/point_measure.hpp"
#include "beurling/util.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <initializer_list>

namespace testsup {

using beurling::cplx;
using beurling::PointMeasure;

inline PointMeasure measure(std::initializer_list<std::pair<double, double>> atoms,
                            double x_max) {
    beurling::atom_list a(atoms.begin(), atoms.end());
    return PointMeasure(std::move(a), x_max);
}

// Weight at a bit-exact location (0 if absent).
inline double weight_at(const PointMeasure& m, double loc) {
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m.location(i) == loc) return m.weight(i);
    return 0.0;
}

// Complex secant iteration; refines a zero of f near s0.  Used as the
// independent localization oracle (no argument principle involved).
inline cplx secant_zero(const std::function<cplx(cplx)>& f, cplx s0, double tol = 1e-12,
                        int max_iter = 80) {
    cplx a = s0, b = s0 + cplx(1e-4, 1e-4);
    cplx fa = f(a), fb = f(b);
    for (int i = 0; i < max_iter; ++i) {
        const cplx step = fb * (b - a) / (fb - fa);
        a = b;
        fa = fb;
        b = b - step;
        fb = f(b);
        if (std::abs(fb) < tol) return b;
    }
    return b;
}

// Random dyadic prime values (k/2 with k odd-ish), whose pairwise products
// are exactly representable in binary64; build_system values over these are
// associativity-independent, so convolution identities hold bit-exactly.
inline std::vector<double> random_dyadic_primes(beurling::rng64& rng, std::size_t count,
                                                double lo = 2.0, double hi = 40.0) {
    std::vector<double> vals;
    while (vals.size() < count) {
        const double v = std::floor(rng.uniform(2.0 * lo, 2.0 * hi)) / 2.0;
        if (v <= 1.0) continue;
        bool dup = false;
        for (double w : vals) dup = dup || w == v;
        if (!dup) vals.push_back(v);
    }
    std::sort(vals.begin(), vals.end());
    return vals;
}

}    // namespace testsup
