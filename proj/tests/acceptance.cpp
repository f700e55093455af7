// Acceptance suite: one criterion per run_criterion call, one pass/fail line
// each, nonzero exit if anything fails.  Expected zero locations are derived
// independently (secant refinement on the Euler-Maclaurin oracle), never from
// the argument-principle path they check.

#include "beurling/construction.hpp"
#include "beurling/mean_values.hpp"
#include "beurling/number_system.hpp"
#include "beurling/point_measure.hpp"
#include "beurling/reference_zeta.hpp"
#include "beurling/zeros.hpp"
#include "beurling/zeta_eval.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace beurling;

namespace {

int g_failures = 0;

void run_criterion(int index, const std::string& title, double time_limit_s,
                   const std::function<std::string()>& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool pass = true;
    try {
        detail = body();
    } catch (const std::exception& e) {
        pass = false;
        detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (time_limit_s > 0.0 && elapsed > time_limit_s) {
        pass = false;
        detail += " [exceeded time budget]";
    }
    if (!pass) ++g_failures;
    std::printf("[%s] criterion %2d: %s (%.1fs) %s\n", pass ? "PASS" : "FAIL", index,
                title.c_str(), elapsed, detail.c_str());
    std::fflush(stdout);
}

struct Check {
    bool ok = true;
    std::ostringstream oss;

    template <class T>
    Check& operator<<(const T& v) {
        oss << v;
        return *this;
    }
    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            oss << " VIOLATION: " << what << ";";
        }
    }
    std::string done() {
        if (!ok) throw numeric_error("criterion checks failed:" + oss.str());
        return oss.str();
    }
};

// Riemann zero ordinates refined via secant on the oracle.
std::vector<double> refined_ordinates(double limit) {
    static const double seeds[] = {14.1, 21.0, 25.0, 30.4, 32.9, 37.6, 40.9, 43.3,
                                   48.0, 49.8, 52.9, 56.4, 59.3, 60.8, 65.1, 67.1,
                                   69.5, 72.1, 75.7, 77.1, 79.3};
    std::vector<double> out;
    for (double seed : seeds) {
        if (seed > limit + 1.5) break;
        cplx z(0.5, seed), zp = z + cplx(1e-4, 1e-4);
        cplx f = riemann_zeta(z), fp = riemann_zeta(zp);
        for (int i = 0; i < 60 && std::abs(f) > 1e-12; ++i) {
            const cplx step = f * (z - zp) / (f - fp);
            zp = z;
            fp = f;
            z = z - step;
            f = riemann_zeta(z);
        }
        if (z.imag() <= limit) out.push_back(z.imag());
    }
    return out;
}

PointMeasure random_dyadic_measure(rng64& rng, double x_max, int max_atoms = 4) {
    atom_list atoms;
    const int n = 1 + int(rng.next() % max_atoms);
    for (int i = 0; i < n; ++i)
        atoms.emplace_back(std::floor(rng.uniform(9.0, 24.0)) / 8.0, rng.uniform(-1.0, 1.0));
    return PointMeasure(std::move(atoms), x_max);
}

std::vector<double> dyadic_primes(rng64& rng, std::size_t count) {
    std::vector<double> vals;
    while (vals.size() < count) {
        const double v = std::floor(rng.uniform(4.0, 80.0)) / 2.0;
        bool dup = v <= 1.0;
        for (double w : vals) dup = dup || w == v;
        if (!dup) vals.push_back(v);
    }
    std::sort(vals.begin(), vals.end());
    return vals;
}

// ---------------------------------------------------------------------------

std::string crit1_oracle_continuation() {
    Check c;
    double worst_margin = -1e300;

    const auto grid_check = [&](const PointMeasure& dN, const ContinuationConfig& cfg,
                                const std::function<cplx(cplx)>& oracle, const char* label) {
        int points = 0;
        for (int i = 0; i < 10; ++i) {
            const double sigma = 0.7 + 1.3 * double(i) / 9.0;
            for (int j = 0; j < 20; ++j) {
                const double t = -28.5 + 3.0 * double(j);
                const cplx s(sigma, t);
                if (std::abs(s - cplx(1.0, 0.0)) < 0.05) continue;
                const EvalResult got = zeta_continued(dN, s, cfg);
                const double diff = std::abs(got.value - oracle(s));
                c.require(diff <= got.err + 1e-8,
                          std::string(label) + " at sigma=" + fmt_double(sigma) +
                              ", t=" + fmt_double(t) + ": diff " + fmt_double(diff) +
                              " > err " + fmt_double(got.err));
                worst_margin = std::max(worst_margin, diff - got.err);
                ++points;
            }
        }
        c << label << ": " << points << " grid points; ";
    };

    const auto rat = rational_system(1e6);
    const auto rat_cfg = make_continuation_config(rat, 0.0);
    grid_check(rat.count_measure(), rat_cfg, [](cplx s) { return riemann_zeta(s); },
               "rational@1e6");

    const auto ext = rescaled_system(0.5, 1e8);
    const auto ext_cfg = make_continuation_config(ext.dN, 0.5, ext.known_density);
    grid_check(ext.dN, ext_cfg, [](cplx s) { return rescaled_zeta(0.5, s).value; },
               "rescaled@1e8");

    c << "worst diff-minus-err " << fmt_double(worst_margin);
    return c.done();
}

std::string crit2_zero_counts() {
    Check c;
    const auto ords = refined_ordinates(50.0);

    // Rational: continuation evaluator on the x_max = 1e6 table.
    {
        std::int64_t expected = 0;
        for (double g : ords)
            if (g >= 5.0 && g <= 30.0) ++expected;
        const auto sys = rational_system(1e6);
        const auto cfg = make_continuation_config(sys, 0.0);
        const Evaluator ez = continuation_evaluator(sys, cfg);
        const std::int64_t got = winding_count(ez, {0.4, 0.9, 5.0, 30.0}, 0.0);
        c.require(expected == 3, "oracle says rational rect holds 3 zeros");
        c.require(got == expected, "rational winding " + std::to_string(got) + " != 3");
        c << "rational [0.4,0.9]x[5,30] -> " << got << "; ";
    }
    // Rescaled theta = 1/2: N(0.6, 25) against ordinates <= 50, doubled.
    {
        const std::int64_t expected = 2 * std::int64_t(ords.size());
        const Evaluator ez = rescaled_reference_evaluator(0.5);
        const auto table = density_table(ez, {0.6}, {25.0}, 0.5);
        c.require(expected == 20, "oracle says 10 ordinates below 50");
        c.require(table.counts[0][0] == expected,
                  "rescaled N(0.6,25) = " + std::to_string(table.counts[0][0]) + " != 20");
        c << "rescaled N(0.6,25) -> " << table.counts[0][0];
    }
    return c.done();
}

std::string crit3_critical_line_growth() {
    Check c;
    const Evaluator ez = rescaled_reference_evaluator(0.5);
    const auto table = density_table(ez, {0.6}, {40.0, 80.0}, 0.5);
    for (std::size_t j = 0; j < table.Ts.size(); ++j) {
        const double T = table.Ts[j];
        const double approx = critical_line_count_asymptotic(0.5, T);
        const double count = double(table.counts[0][j]);
        const double rel = std::abs(count - approx) / count;
        c.require(rel <= 0.10, "T=" + fmt_double(T) + ": asymptotic off by " + fmt_double(rel));
        c << "T=" << T << ": count " << count << " vs asymptotic " << fmt_double(approx)
          << " (rel " << fmt_double(rel) << "); ";
    }
    return c.done();
}

std::string crit4_density_exponent() {
    Check c;
    const double theta = 0.5;
    const Evaluator ez = rescaled_reference_evaluator(theta);
    const std::vector<double> alphas{0.6, 0.65, 0.7, 0.74, 0.76, 0.8, 0.85};
    const std::vector<double> Ts{50.0, 100.0, 200.0, 400.0};
    const auto table = density_table(ez, alphas, Ts, theta);
    const auto fits = fit_density_exponent(table, theta);

    // All zeros sit on the critical line sigma = 0.75: every alpha below it
    // sees the same counts, every alpha above it sees none.
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        for (std::size_t j = 0; j < Ts.size(); ++j) {
            if (alphas[i] < 0.75)
                c.require(table.counts[i][j] == table.counts[0][j],
                          "alpha=" + fmt_double(alphas[i]) + " differs from alpha=0.6");
            else
                c.require(table.counts[i][j] == 0,
                          "alpha=" + fmt_double(alphas[i]) + " should see no zeros");
        }
    }
    // Counts below the critical line follow the T log T counting law; the
    // finite-height fitted exponent sits above 1 by ~1/log T, so the sharp
    // check is count-level agreement with the asymptotic, the exponent is
    // reported.
    c.require(fits[0].c_hat.has_value(), "no exponent fit at alpha = 0.6");
    if (fits[0].c_hat) {
        c.require(*fits[0].c_hat > 0.5 && *fits[0].c_hat < 1.6,
                  "c_hat at 0.6 is " + fmt_double(*fits[0].c_hat));
        c << "c_hat(0.6) = " << fmt_double(*fits[0].c_hat) << "; ";
    }
    for (std::size_t j = 0; j < Ts.size(); ++j) {
        const double approx = critical_line_count_asymptotic(theta, Ts[j]);
        const double rel = std::abs(double(table.counts[0][j]) - approx) /
                           double(table.counts[0][j]);
        c.require(rel <= 0.10, "T=" + fmt_double(Ts[j]) + " count off the asymptotic by " +
                                   fmt_double(rel));
    }
    // The exponent bound can only be falsified, never "hit", at desk scale:
    // rows with vanishing counts have nothing to fit (0 <= anything).
    // Report the full table.
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (alphas[i] >= 0.75)
            c.require(!fits[i].c_hat.has_value(), "unexpected fit above the critical line");
        c << "N(" << fmt_double(alphas[i]) << ",.) =";
        for (std::size_t j = 0; j < Ts.size(); ++j) c << " " << table.counts[i][j];
        c << " (c_paper " << fmt_double(fits[i].c_paper) << "); ";
    }
    return c.done();
}

std::string crit5_mollifier_exactness() {
    Check c;
    const auto check_system = [&](const NumberSystem& sys, const char* label) {
        for (double X : {10.0, 50.0, 200.0}) {
            if (X > sys.x_max()) continue;
            const auto am = mollified_coeffs(sys, X);
            c.require(am.size() >= 1 && am.location(0) == 1.0 && am.weight(0) == 1.0,
                      std::string(label) + ": leading coefficient not exactly 1");
            for (std::size_t i = 1; i < am.size() && am.location(i) <= X; ++i)
                c.require(false, std::string(label) + ": nonzero coefficient at " +
                                     fmt_double(am.location(i)) + " <= X=" + fmt_double(X));
        }
        c << label << " ok; ";
    };
    check_system(rational_system(1e5), "rational@1e5");
    rng64 rng(314159);
    check_system(build_system(PrimeList::simple(dyadic_primes(rng, 7)), 5000.0), "dyadic-7");
    check_system(build_system(PrimeList::simple(dyadic_primes(rng, 10)), 5000.0), "dyadic-10");
    return c.done();
}

std::string crit6_six_term_identity() {
    Check c;
    const auto sys = rational_system(1e5);
    const auto cfg = make_continuation_config(sys, 0.0);
    const double X = 20.0, Y = 50.0;
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        const double sigma = 0.56 + 0.034 * double(k);
        const double t = (k % 2 == 0 ? 1.0 : -1.0) * (3.0 + 17.0 * double(k) / 9.0);
        const auto rep = smoothing_identity(sys, cfg, {sigma, t}, X, Y);
        c.require(rep.residual <= 1e-4 + rep.err,
                  "s=" + fmt_double(sigma) + (t >= 0 ? "+" : "") + fmt_double(t) +
                      "i: residual " + fmt_double(rep.residual) + " err " + fmt_double(rep.err));
        worst = std::max(worst, rep.residual);
    }
    c << "10 points, worst residual " << fmt_double(worst);
    return c.done();
}

std::string crit7_bombieri() {
    Check c;
    const auto sys = rational_system(4000.0);
    const double N = 64.0;
    std::vector<double> freqs;
    for (int n = 64; n <= 128; ++n) freqs.push_back(double(n));
    double worst = 0.0;
    int violations = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        rng64 rng(seed);
        std::vector<cplx> coeffs;
        for (std::size_t i = 0; i < freqs.size(); ++i) coeffs.push_back(rng.unit_disc());
        std::vector<double> pts;
        double t = rng.uniform(0.0, 1.0);
        for (int r = 0; r < 30; ++r) {
            pts.push_back(t);
            t += 1.0 + rng.uniform(0.0, 0.8);
        }
        const auto rep = bombieri_check(DirichletPolynomial(freqs, coeffs), N, pts, sys);
        worst = std::max(worst, rep.ratio);
        if (!(rep.ratio <= 1.0 + 1e-10)) ++violations;
    }
    c.require(violations == 0, std::to_string(violations) + " violations");
    c << "100 seeded instances, max ratio " << fmt_double(worst);
    return c.done();
}

std::string crit8_measure_algebra() {
    Check c;
    const double x_max = 30.0;
    rng64 rng(20260808);
    int trials = 0;
    for (int k = 0; k < 500; ++k) {
        // Inverse round trip.  The body mass stays below the location-1
        // weight: otherwise the inverse series grows geometrically and no
        // absolute atom tolerance is achievable even in exact rounding.
        const double w1 = rng.uniform(0.5, 2.0);
        auto body = random_dyadic_measure(rng, x_max, 3);
        double mass = 0.0;
        for (std::size_t i = 0; i < body.size(); ++i) mass += std::abs(body.weight(i));
        if (mass > 0.9 * w1) body = body.scaled(0.9 * w1 / mass);
        const auto n = PointMeasure::dirac(1.0, w1, x_max) + body;
        const auto prod = convolve(conv_inverse(n, x_max), n, x_max);
        c.require(prod.size() >= 1 && prod.location(0) == 1.0 &&
                      std::abs(prod.weight(0) - 1.0) <= 1e-10,
                  "inverse: off-identity at trial " + std::to_string(k));
        for (std::size_t i = 1; i < prod.size(); ++i)
            c.require(std::abs(prod.weight(i)) <= 1e-10,
                      "inverse: residual atom at trial " + std::to_string(k));

        // Exponential homomorphism.
        const auto p1 = random_dyadic_measure(rng, x_max, 3);
        const auto p2 = random_dyadic_measure(rng, x_max, 3);
        const auto lhs = exp_star(p1 + p2, x_max);
        const auto rhs = convolve(exp_star(p1, x_max), exp_star(p2, x_max), x_max);
        c.require(measure_max_diff(lhs, rhs) <= 1e-10,
                  "exp_star homomorphism at trial " + std::to_string(k));
        ++trials;
    }
    c << trials << " seeded trials of each identity at 1e-10 atom tolerance";
    return c.done();
}

std::string crit9_construction() {
    Check c;
    const double theta = 0.6;
    auto out = std::make_shared<const ConstructionOutput>(build_construction(theta, 1e6));

    for (std::size_t i = 0; i < out->piR.size(); ++i)
        c.require(out->piR.weight(i) >= 0.0 && out->piR.weight(i) < 1.0,
                  "piR weight outside [0,1)");
    c.require(out->Li_ratio_max <= 1.2,
              "Pi_R / Li ratio " + fmt_double(out->Li_ratio_max) + " > 1.2");
    c.require(std::isfinite(out->NR_ratio_max) && out->NR_ratio_max > 0.0,
              "N_R ratio not finite");
    c << "Li ratio " << fmt_double(out->Li_ratio_max) << ", N_R/x^0.4 sup "
      << fmt_double(out->NR_ratio_max) << "; ";

    const auto rep = verify_density(*out);
    c.require(rep.slope_rel_err <= 0.02,
              "density slope off by " + fmt_double(rep.slope_rel_err));
    c << "slope " << fmt_double(rep.slope) << " vs A " << fmt_double(out->A_expected)
      << " (rel " << fmt_double(rep.slope_rel_err) << "), sup-constant "
      << fmt_double(rep.density_constant) << "; ";

    // Quotient vs direct evaluation on 50 grid points with Re s >= 0.8.
    const auto cfg = make_continuation_config(out->dNP, theta, out->A_expected);
    int agree = 0;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 5; ++j) {
            const cplx s(0.8 + 1.2 * double(j) / 4.0, -18.0 + 4.0 * double(i));
            if (std::abs(s - cplx(1.0, 0.0)) < 0.05) continue;
            const EvalResult q = zeta_P_eval(*out, s);
            const EvalResult d = zeta_continued(out->dNP, s, cfg);
            c.require(std::abs(q.value - d.value) <= q.err + d.err + 1e-9,
                      "route disagreement at s = " + fmt_complex(s));
            ++agree;
        }
    c << agree << " two-route points; ";

    // Zero count equals the rescaled count on the adjusted rectangle.
    const Evaluator quot = construction_evaluator(out);
    const Evaluator resc = rescaled_reference_evaluator(theta);
    const Rectangle rect{0.75 + 1e-3, 1.05, 5.0, 20.0};
    const auto expected = winding_count(resc, rect, theta);
    const auto got = winding_count(quot, rect, theta);
    c.require(got == expected, "constructed zeta counts " + std::to_string(got) +
                                   " zeros, rescaled " + std::to_string(expected));
    c << "zero count " << got << " (rescaled " << expected << ")";
    return c.done();
}

std::string crit10_positivity() {
    Check c;
    const auto scan = positivity_scan(200, logspace(1.0 + 1e-6, 1e6, 200));
    c.require(scan.min_f0 > 0.0, "minimum " + fmt_double(scan.min_f0) + " not positive");
    c.require(scan.cross_check_err < 1e-12, "f1(1) product cross-check failed");
    c << "min f0 = " << fmt_double(scan.min_f0) << " at m=" << scan.argmin_m
      << ", u=" << fmt_double(scan.argmin_u);
    return c.done();
}

std::string crit11_second_moment() {
    Check c;
    const Evaluator ez = rescaled_reference_evaluator(0.5);
    double lo = 1e300, hi = 0.0;
    for (double T : {25.0, 50.0, 100.0, 200.0}) {
        const auto m = vertical_moment(ez, 0.75, T, 2.0, 1e-5);
        const double ratio = m.value / std::log(T);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        c << "T=" << T << ": moment/logT = " << fmt_double(ratio) << "; ";
    }
    c.require(hi / lo <= 3.0, "max/min " + fmt_double(hi / lo) + " > 3");
    c << "spread " << fmt_double(hi / lo);
    return c.done();
}

}    // namespace

int main() {
    run_criterion(1, "continuation matches the oracle on the sigma-t grid", 60.0,
                  crit1_oracle_continuation);
    run_criterion(2, "argument-principle zero counts", 120.0, crit2_zero_counts);
    run_criterion(3, "critical-line counting asymptotic within 10%", 0.0,
                  crit3_critical_line_growth);
    run_criterion(4, "density tables consistent with the exponent bound", 0.0,
                  crit4_density_exponent);
    run_criterion(5, "mollified coefficients vanish exactly on (1, X]", 0.0,
                  crit5_mollifier_exactness);
    run_criterion(6, "six-term identity residuals", 120.0, crit6_six_term_identity);
    run_criterion(7, "Bessel-type inequality never violated", 0.0, crit7_bombieri);
    run_criterion(8, "measure algebra property trials", 0.0, crit8_measure_algebra);
    run_criterion(9, "theta = 0.6 construction end to end", 300.0, crit9_construction);
    run_criterion(10, "positivity lemma scan", 0.0, crit10_positivity);
    run_criterion(11, "second moment on the critical line stays ~ log T", 0.0,
                  crit11_second_moment);

    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
