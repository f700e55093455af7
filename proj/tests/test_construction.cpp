#include "beurling/construction.hpp"

#include "beurling/reference_zeta.hpp"
#include "beurling/sieve.hpp"
#include "beurling/zeros.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace beurling;

namespace {

double abs_cumulative(const PointMeasure& m, double x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m.size() && m.location(i) <= x; ++i)
        acc += std::abs(m.weight(i));
    return acc;
}

}    // namespace

TEST_SUITE_BEGIN("construction");

TEST_CASE("a_pm closed-form values and positivity sweep") {
    CHECK(a_pm(2.0, 1, 0.5) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(a_pm(2.0, 2, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
    // u = p^{m theta/(1-theta)}; for p = 2, m = 1, theta = 0.6: 2^1.5.
    CHECK(a_pm(2.0, 1, 0.6) == doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-15));
    for (auto p : sieve_primes(100))
        for (unsigned m = 1; m <= 50; ++m) CHECK(a_pm(double(p), m, 0.6) > 0.0);
    CHECK_THROWS_AS(a_pm(2.0, 1, 0.4), validation_error);
}

TEST_CASE("positivity scan") {
    const auto triv = positivity_scan(1, {2.0, 10.0});
    CHECK(triv.min_f0 == 2.0);    // f0(u) = u for m = 1

    // Near u = 1 the minimum approaches 0 from above: f0(1+e) ~ e prod(1-1/p).
    const auto near = positivity_scan(6, {1.0 + 1e-9});
    CHECK(near.min_f0 > 0.0);
    CHECK(near.min_f0 < 1e-8);

    const auto scan = positivity_scan(60, logspace(1.0 + 1e-6, 1e6, 80));
    CHECK(scan.min_f0 > 0.0);
    CHECK(scan.cross_check_err < 1e-12);
    CHECK(scan.min_f1_at_1 > 0.0);
}

TEST_CASE("theta = 1/2 degenerates to the rescaled system") {
    // a_{p,m} = (1/m) sum mu(k) p^{m/k} counts aperiodic necklaces: integers.
    const auto out = build_construction(0.5, 400.0);
    CHECK(out.piR.is_empty());
    CHECK(out.dPiR.is_empty());
    CHECK(out.zetaR_at_1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(out.A_expected == doctest::Approx(0.5).epsilon(1e-12));
    // piP at p^2 carries weight p.
    CHECK(testsup::weight_at(out.piP, 4.0) == 2.0);
    CHECK(testsup::weight_at(out.piP, 9.0) == 3.0);
    // dN_P = dN_theta exactly.
    CHECK(measure_max_diff(out.dNP, rescaled_system(0.5, 400.0).dN) == 0.0);
}

TEST_CASE("theta = 0.6 construction invariants") {
    const double theta = 0.6;
    const auto out = build_construction(theta, 1e4);

    // Fractional parts live in [0, 1); integer parts are non-negative integers.
    for (std::size_t i = 0; i < out.piR.size(); ++i) {
        CHECK(out.piR.weight(i) >= 0.0);
        CHECK(out.piR.weight(i) < 1.0);
    }
    for (std::size_t i = 0; i < out.piP.size(); ++i) {
        CHECK(out.piP.weight(i) >= 0.0);
        CHECK(out.piP.weight(i) == std::floor(out.piP.weight(i)));
    }
    // piP + piR reassembles a_{p,m} at the canonical locations.
    const double loc21 = std::pow(2.0, 1.0 / (1.0 - theta));
    CHECK(testsup::weight_at(out.piP, loc21) == 2.0);
    CHECK(testsup::weight_at(out.piR, loc21) ==
          doctest::Approx(std::pow(2.0, 1.5) - 2.0).epsilon(1e-14));

    // dMR * dNR = delta_1 on [1, x_max].
    const auto prod = convolve(out.dMR, out.dNR, out.x_max);
    REQUIRE(prod.size() >= 1);
    CHECK(prod.location(0) == 1.0);
    CHECK(prod.weight(0) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 1; i < prod.size(); ++i) CHECK(std::abs(prod.weight(i)) <= 1e-10);

    // |dMR| <= dNR in the cumulative sense.
    for (double x : logspace(2.0, out.x_max, 40))
        CHECK(abs_cumulative(out.dMR, x) <= out.dNR.cumulative(x) * (1.0 + 1e-9) + 1e-9);

    // Pi_R against Li(x^{1-theta}) and N_R against x^{1-theta}.
    CHECK(out.Li_ratio_max > 0.0);
    CHECK(out.Li_ratio_max <= 1.5);
    CHECK(out.NR_ratio_max > 0.0);
    CHECK(out.NR_ratio_max < 20.0);

    CHECK_THROWS_AS(build_construction(0.4, 1e4), validation_error);
}

TEST_CASE("theta = 0.6 density and zeta consistency") {
    const double theta = 0.6;
    auto out = std::make_shared<const ConstructionOutput>(build_construction(theta, 1e4));

    // N_P(1) = 1 exactly (delta_1 from the exponential).
    CHECK(out->dNP.cumulative(1.0) == doctest::Approx(1.0).epsilon(1e-12));

    const auto rep = verify_density(*out);
    CHECK(rep.slope_rel_err < 0.08);
    CHECK(std::isfinite(rep.density_constant));

    // Two evaluation routes: quotient form vs Mellin/continuation of dNP.
    const auto cfg = make_continuation_config(out->dNP, theta, out->A_expected);
    for (cplx s : {cplx(2.0, 0.0), cplx(1.2, 4.0), cplx(0.9, -7.0)}) {
        const EvalResult quot = zeta_P_eval(*out, s);
        const EvalResult direct = zeta_continued(out->dNP, s, cfg);
        CHECK(std::abs(quot.value - direct.value) <= quot.err + direct.err + 1e-9);
    }

    // The exponential factor never vanishes.
    CHECK(std::abs(zeta_P_eval(*out, {2.0, 0.0}).value) > 0.0);

    // Preconditions.
    CHECK_THROWS_AS(zeta_P_eval(*out, {0.41, 3.0}), numeric_error);
    CHECK_THROWS_AS(zeta_P_eval(*out, {1.0, 0.0}), numeric_error);
}

TEST_CASE("theta = 0.6 zeros match the rescaled zeta") {
    const double theta = 0.6;
    auto out = std::make_shared<const ConstructionOutput>(build_construction(theta, 1e4));
    const Evaluator quot = construction_evaluator(out);
    const Evaluator resc = rescaled_reference_evaluator(theta);
    // Critical line sits at 0.8; ordinates scale by 1 - theta = 0.4.
    const Rectangle rect{0.705, 1.05, 5.0, 12.0};
    const auto expected = winding_count(resc, rect, theta);
    CHECK(expected == 3);    // Riemann ordinates 14.13, 21.02, 25.01 map into [12.5, 30]
    CHECK(winding_count(quot, rect, theta) == expected);
}

TEST_SUITE_END();
