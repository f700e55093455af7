#include "beurling/construction.hpp"

#include "beurling/quadrature.hpp"
#include "beurling/reference_zeta.hpp"
#include "beurling/sieve.hpp"

#include <cmath>

namespace beurling {

namespace {

// Li(y) <= li_slack * y / log y on the range we use (y >= 3).
constexpr double li_slack = 1.5;

}    // namespace

double a_pm(double p, unsigned m, double theta) {
    if (!(p > 1.0)) throw validation_error("a_pm: p must exceed 1");
    if (m == 0) throw validation_error("a_pm: m must be >= 1");
    if (!(theta >= 0.5 && theta < 1.0)) throw validation_error("a_pm: theta in [1/2, 1)");
    const double u = std::pow(p, double(m) * theta / (1.0 - theta));
    kahan_sum acc;
    for (std::uint64_t k : divisors(m)) {
        const int mu = mobius(k);
        if (mu != 0) acc.add(double(mu) * std::pow(u, 1.0 / double(k)));
    }
    return acc.value() / double(m);
}

PositivityScan positivity_scan(unsigned m_max, const std::vector<double>& u_grid) {
    for (double u : u_grid)
        if (!(u > 1.0)) throw validation_error("positivity_scan: grid values must exceed 1");
    PositivityScan scan;
    scan.min_f0 = std::numeric_limits<double>::infinity();
    scan.min_f1_at_1 = std::numeric_limits<double>::infinity();
    for (unsigned m = 1; m <= m_max; ++m) {
        const auto divs = divisors(m);
        std::vector<std::pair<double, int>> mus;    // (k, mu(k)) for squarefree k
        for (std::uint64_t k : divs) {
            const int mu = mobius(k);
            if (mu != 0) mus.emplace_back(double(k), mu);
        }
        // f1(1) = sum mu(k)/k = prod_{p | m} (1 - 1/p), checked exactly.
        kahan_sum f1;
        for (auto [k, mu] : mus) f1.add(double(mu) / k);
        double prod = 1.0;
        for (std::uint64_t p : prime_factors(m)) prod *= 1.0 - 1.0 / double(p);
        scan.cross_check_err = std::max(scan.cross_check_err, std::abs(f1.value() - prod));
        scan.min_f1_at_1 = std::min(scan.min_f1_at_1, f1.value());

        for (double u : u_grid) {
            kahan_sum f0;
            for (auto [k, mu] : mus) f0.add(double(mu) * std::pow(u, 1.0 / k));
            if (f0.value() < scan.min_f0) {
                scan.min_f0 = f0.value();
                scan.argmin_m = m;
                scan.argmin_u = u;
            }
        }
    }
    return scan;
}

ConstructionOutput build_construction(double theta, double x_max, double prime_cap) {
    if (!(theta >= 0.5 && theta < 1.0))
        throw validation_error("build_construction: theta must lie in [1/2, 1)");
    if (!(x_max >= 4.0)) throw validation_error("build_construction: x_max too small");

    ConstructionOutput out;
    out.theta = theta;
    out.x_max = x_max;
    const double inv = 1.0 / (1.0 - theta);
    out.prime_cap = prime_cap > 0.0 ? prime_cap : std::pow(x_max, 1.0 - theta);
    out.ext_cap = std::max(x_max, std::clamp(x_max * x_max, 1e10, 1e12));

    // Single canonical power table: location(q, M) = q^{M/(1-theta)}.
    auto location = [&](double q, unsigned M) { return std::pow(q, double(M) * inv); };

    // Primes of both the truncated and the extended support.
    const double ext_prime_cap = std::pow(out.ext_cap, 1.0 - theta);
    const auto primes = sieve_primes(std::uint64_t(ext_prime_cap) + 1);

    atom_list piP_atoms, piR_atoms, dPiR_atoms, dPiR_ext_atoms;
    for (std::uint64_t qi : primes) {
        const double q = double(qi);
        for (unsigned m = 1;; ++m) {
            const double loc = location(q, m);
            if (loc > out.ext_cap) break;
            double a = a_pm(q, m, theta);
            if (!(a > 0.0)) throw numeric_error("build_construction: a_{p,m} not positive");
            // Integral a_{p,m} (always, for theta = 1/2) must not leak a
            // near-1 fractional atom through rounding of the k-th roots.
            if (std::abs(a - std::round(a)) < 1e-9 * std::max(1.0, a)) a = std::round(a);
            const double ip = std::floor(a);
            const double fp = a - ip;
            if (loc <= x_max && q <= out.prime_cap) {
                piP_atoms.emplace_back(loc, ip);
                if (fp != 0.0) piR_atoms.emplace_back(loc, fp);
            }
            // Push pi_R to Pi_R = sum_j pi_R(x^{1/j})/j: an atom at loc^j,
            // realized through the canonical table as (q, m j).
            if (fp != 0.0) {
                for (unsigned j = 1;; ++j) {
                    const double locj = location(q, m * j);
                    if (locj > out.ext_cap) break;
                    dPiR_ext_atoms.emplace_back(locj, fp / double(j));
                    if (locj <= x_max && q <= out.prime_cap)
                        dPiR_atoms.emplace_back(locj, fp / double(j));
                }
            }
        }
    }
    out.piP = PointMeasure(std::move(piP_atoms), x_max);
    out.piR = PointMeasure(std::move(piR_atoms), x_max);
    out.dPiR = PointMeasure(std::move(dPiR_atoms), x_max);
    out.dPiR_ext = PointMeasure(std::move(dPiR_ext_atoms), out.ext_cap);

    out.dNR = exp_star(out.dPiR, x_max);
    out.dMR = conv_inverse(out.dNR, x_max);
    out.dNP = convolve(rescaled_system(theta, x_max).dN, out.dMR, x_max);

    // Grid diagnostics: Pi_R against Li(x^{1-theta}) and N_R against x^{1-theta}.
    const double grid_lo = std::min(std::max(10.0, std::pow(3.0, inv)), x_max);
    for (double x : logspace(grid_lo, x_max, 160)) {
        const double li = log_integral(std::pow(x, 1.0 - theta));
        if (li > 0.1)
            out.Li_ratio_max = std::max(out.Li_ratio_max, out.dPiR.cumulative(x) / li);
        out.NR_ratio_max =
            std::max(out.NR_ratio_max, out.dNR.cumulative(x) / std::pow(x, 1.0 - theta));
    }

    // zeta_R(1) from the extended support; the remaining tail is bounded via
    // Pi_R(u) <= C Li(u^{1-theta}) with the measured C.
    const double C = std::max(out.Li_ratio_max, 1.0);
    const double X = out.ext_cap;
    const double tail = C * li_slack * std::pow(X, -theta) /
                        (theta * (1.0 - theta) * std::log(X));
    const double mell1 = out.dPiR_ext.mellin(cplx(1.0, 0.0)).real();
    out.zetaR_at_1 = std::exp(mell1);
    out.zetaR_at_1_err = out.zetaR_at_1 * std::expm1(tail);
    out.A_expected = (1.0 - theta) / out.zetaR_at_1;
    return out;
}

DensityVerifyReport verify_density(const ConstructionOutput& out, std::size_t grid_size) {
    DensityVerifyReport rep;
    const bool log_corrected = out.theta == 0.5;
    const auto grid = logspace(2.0, out.x_max, grid_size);
    kahan_sum num, den;
    for (double x : grid) {
        const double n = out.dNP.cumulative(x);
        rep.samples.emplace_back(x, n);
        num.add(n * x);
        den.add(x * x);
        const double damp =
            std::pow(x, out.theta) * (1.0 + (log_corrected ? std::log(x) : 0.0));
        rep.density_constant =
            std::max(rep.density_constant, std::abs(n - out.A_expected * x) / damp);
    }
    rep.slope = num.value() / den.value();
    rep.slope_rel_err = std::abs(rep.slope - out.A_expected) / out.A_expected;
    return rep;
}

EvalResult zeta_P_eval(const ConstructionOutput& out, cplx s) {
    const double sigma = s.real();
    const double margin = 0.02;
    if (!(sigma > 1.0 - out.theta + margin))
        throw numeric_error("zeta_P_eval: Re s too close to 1 - theta");
    if (std::abs(s - cplx(1.0, 0.0)) < 1e-8)
        throw numeric_error("zeta_P_eval: pole proximity at s = 1");

    const em_result zt = rescaled_zeta(out.theta, s);
    const cplx mell = out.dPiR_ext.mellin(s);
    const cplx value = zt.value * std::exp(-mell);

    // Tail of the Mellin integral beyond ext_cap, via Pi_R <= C Li(x^{1-theta}).
    const double C = std::max(out.Li_ratio_max, 1.0);
    const double X = out.ext_cap;
    const double d = sigma - (1.0 - out.theta);
    const double tail = std::abs(s) * C * li_slack * std::pow(X, -d) /
                        (d * (1.0 - out.theta) * std::log(X));
    const double err = std::abs(value) * std::expm1(tail) + zt.err * std::abs(std::exp(-mell));
    return {value, err};
}

Evaluator construction_evaluator(std::shared_ptr<const ConstructionOutput> out) {
    return Evaluator{[out](cplx s) { return zeta_P_eval(*out, s); }, nullptr, "construction"};
}

}    // namespace beurling
