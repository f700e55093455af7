#include "beurling/zeta_eval.hpp"

#include "beurling/gamma.hpp"
#include "beurling/quadrature.hpp"
#include "beurling/reference_zeta.hpp"

#include <cmath>

namespace beurling {

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

struct ContinuedPair {
    cplx F, dF;
    double errF = 0.0, errdF = 0.0;
};

// Head sum and its derivative in one pass (one complex exp per atom).
struct HeadSums {
    cplx f, df;
};

HeadSums head_sums(std::span<const double> ws, std::span<const double> lls, std::size_t begin,
                   std::size_t end, cplx s) {
    const std::size_t n = end - begin;
    struct Part {
        cplx f, df;
    };
    std::vector<Part> parts((n + 8191) / 8192);
    parallel_chunks(n, 8192, [&](std::size_t k, std::size_t b, std::size_t e) {
        kahan_csum f, df;
        for (std::size_t i = begin + b; i < begin + e; ++i) {
            const cplx p = ws[i] * std::exp(-s * lls[i]);
            f.add(p);
            df.add(-lls[i] * p);
        }
        parts[k] = {f.value(), df.value()};
    });
    kahan_csum f, df;
    for (const auto& p : parts) {
        f.add(p.f);
        df.add(p.df);
    }
    return {f.value(), df.value()};
}

// Full continuation, value and derivative together.
ContinuedPair continued_both(const PointMeasure& dN, cplx s, const ContinuationConfig& cfg) {
    const double sigma = s.real(), theta = cfg.theta;
    const double x_max = dN.x_max();
    const double split = cfg.split_x > 0.0 ? cfg.split_x : x_max;
    if (!(split >= 1.0 && split <= x_max))
        throw validation_error("zeta_continued: split_x outside [1, x_max]");

    const bool has_tail =
        cfg.refined ? (cfg.C_prim > 0.0 || cfg.tail_mean_err > 0.0) : (cfg.C_E > 0.0);
    if (has_tail && !(sigma > theta))
        throw numeric_error("zeta_continued: Re s <= theta, continuation formula invalid");
    if (cfg.A != 0.0 && std::abs(s - cplx(1.0, 0.0)) < 1e-8)
        throw numeric_error("zeta_continued: pole proximity at s = 1");

    const auto ws = dN.weights();
    const auto lls = dN.log_locations();
    const std::size_t i_split = dN.upper_index(split);

    ContinuedPair out;
    const HeadSums head = head_sums(ws, lls, 0, i_split, s);
    out.F = head.f;
    out.dF = head.df;

    const double log_split = std::log(split), log_xmax = std::log(x_max);
    const cplx pow_split = std::exp(-s * log_split);       // split^-s
    const cplx pow_xmax = std::exp(-s * log_xmax);         // x_max^-s
    const cplx split_1ms = split * pow_split;              // split^{1-s}
    const cplx xmax_1ms = x_max * pow_xmax;                // x_max^{1-s}
    const double N_split = dN.cumulative(split);
    const double E_split = N_split - cfg.A * split;

    if (cfg.A != 0.0) {
        const cplx sm1 = s - 1.0;
        out.F += cfg.A * split_1ms / sm1;
        out.dF += cfg.A * (-log_split * split_1ms / sm1 - split_1ms / (sm1 * sm1));
    }
    out.F -= E_split * pow_split;
    out.dF += E_split * log_split * pow_split;

    // Exact integral s * int_{split}^{x_max} E(u) u^{-s-1} du: E is affine
    // minus a step per inter-atom interval; the per-interval closed forms
    // telescope into boundary terms plus one power per interior atom.
    if (split < x_max) {
        if (std::abs(s) < 1e-12)
            throw numeric_error("zeta_continued: s too close to 0 with split_x < x_max");
        // Interior atoms: split < loc < x_max.
        const std::size_t lo = i_split;
        std::size_t hi = dN.upper_index(x_max);
        while (hi > lo && dN.location(hi - 1) >= x_max) --hi;

        struct Part {
            cplx t0, g;    // sum of w v^-s and sum of w G(v)
            double wsum;
        };
        const std::size_t n = hi - lo;
        std::vector<Part> parts((n + 8191) / 8192, Part{{}, {}, 0.0});
        const cplx inv_s = 1.0 / s, inv_s2 = inv_s * inv_s;
        parallel_chunks(n, 8192, [&](std::size_t k, std::size_t b, std::size_t e) {
            kahan_csum t0, g;
            kahan_sum wsum;
            for (std::size_t i = lo + b; i < lo + e; ++i) {
                const cplx p = std::exp(-s * lls[i]);
                t0.add(ws[i] * p);
                g.add(ws[i] * p * (-lls[i] * inv_s - inv_s2));    // G(v) = v^-s(-ln v/s - 1/s^2)
                wsum.add(ws[i]);
            }
            parts[k] = {t0.value(), g.value(), wsum.value()};
        });
        kahan_csum t0_acc, g_acc;
        kahan_sum w_acc;
        for (const auto& p : parts) {
            t0_acc.add(p.t0);
            g_acc.add(p.g);
            w_acc.add(p.wsum);
        }
        const double N_last = N_split + w_acc.value();

        auto Gfun = [&](double logu, cplx powu) { return powu * (-logu * inv_s - inv_s2); };
        const cplx T0 = N_split * pow_split - N_last * pow_xmax + t0_acc.value();
        cplx sM0 = T0;
        cplx M1 = N_last * Gfun(log_xmax, pow_xmax) - N_split * Gfun(log_split, pow_split) -
                  g_acc.value();
        if (cfg.A != 0.0) {
            const cplx sm1 = s - 1.0, one_ms = 1.0 - s;
            sM0 += s * cfg.A * (xmax_1ms - split_1ms) / sm1;
            auto Hfun = [&](double logu, cplx u1ms) {
                return u1ms * (logu / one_ms - 1.0 / (one_ms * one_ms));
            };
            M1 -= cfg.A * (Hfun(log_xmax, xmax_1ms) - Hfun(log_split, split_1ms));
        }
        out.F += sM0;
        out.dF += sM0 * inv_s - s * M1;    // d/ds (s M0) = M0 - s M1
    }

    // Tail over (x_max, inf): modeled mean + bounded fluctuation.
    const double xpow_ms = std::pow(x_max, -sigma);
    if (cfg.refined) {
        out.F += cfg.tail_mean * pow_xmax;
        out.dF += -cfg.tail_mean * log_xmax * pow_xmax;
        const double d = sigma + 1.0 - 2.0 * theta;    // > 0 whenever sigma > theta
        if (cfg.C_prim > 0.0) {
            const double J0 = std::pow(x_max, 2.0 * theta - sigma - 1.0) / d;
            const double J1 = std::pow(x_max, 2.0 * theta - sigma - 1.0) *
                              (log_xmax / d + 1.0 / (d * d));
            const double s_s1 = std::abs(s * (s + 1.0));
            out.errF += s_s1 * cfg.C_prim * J0;
            out.errdF += cfg.C_prim * (std::abs(2.0 * s + 1.0) * J0 + s_s1 * J1);
        }
        out.errF += cfg.tail_mean_err * xpow_ms;
        out.errdF += cfg.tail_mean_err * log_xmax * xpow_ms;
    } else if (cfg.C_E > 0.0) {
        const double d = sigma - theta;
        const double xp = std::pow(x_max, theta - sigma);
        out.errF += std::abs(s) * cfg.C_E * xp / d;
        out.errdF += cfg.C_E * xp * (1.0 / d + std::abs(s) * (log_xmax / d + 1.0 / (d * d)));
    }
    return out;
}

}    // namespace

ContinuationConfig make_continuation_config(const PointMeasure& dN, double theta,
                                            std::optional<double> A_known, double quad_tol) {
    const WellBehavedReport rep = well_behaved_report(dN, theta, A_known);
    ContinuationConfig cfg;
    cfg.split_x = dN.x_max();
    cfg.A = rep.A_hat;
    cfg.theta = theta;
    cfg.C_E = rep.C_hat;
    cfg.quad_tol = quad_tol;
    cfg.refined = true;
    cfg.tail_mean = rep.tail_mean;
    cfg.tail_mean_err = 2.0 * rep.tail_mean_err;
    cfg.C_prim = rep.C_prim;
    return cfg;
}

ContinuationConfig make_continuation_config(const NumberSystem& sys, double theta,
                                            double quad_tol) {
    return make_continuation_config(sys.count_measure(), theta, sys.known_density(), quad_tol);
}

EvalResult zeta_continued(const PointMeasure& dN, cplx s, const ContinuationConfig& cfg) {
    const ContinuedPair p = continued_both(dN, s, cfg);
    return {p.F, p.errF};
}

EvalResult zeta_continued(const NumberSystem& sys, cplx s, const ContinuationConfig& cfg) {
    return zeta_continued(sys.count_measure(), s, cfg);
}

EvalResult zeta_derivative(const PointMeasure& dN, cplx s, const ContinuationConfig& cfg) {
    const ContinuedPair p = continued_both(dN, s, cfg);
    return {p.dF, p.errdF};
}

EvalResult zeta_derivative(const NumberSystem& sys, cplx s, const ContinuationConfig& cfg) {
    return zeta_derivative(sys.count_measure(), s, cfg);
}

Evaluator reference_zeta_evaluator() {
    return Evaluator{
        [](cplx s) {
            const em_result r = riemann_zeta_em(s);
            return EvalResult{r.value, r.err};
        },
        [](cplx s) {
            const em_result r = riemann_zeta_deriv_em(s);
            return EvalResult{r.value, r.err};
        },
        "riemann-reference"};
}

Evaluator rescaled_reference_evaluator(double theta) {
    return Evaluator{
        [theta](cplx s) {
            const em_result r = rescaled_zeta(theta, s);
            return EvalResult{r.value, r.err};
        },
        [theta](cplx s) {
            const em_result r = rescaled_zeta_deriv(theta, s);
            return EvalResult{r.value, r.err};
        },
        "rescaled-reference"};
}

Evaluator continuation_evaluator(std::shared_ptr<const PointMeasure> dN, ContinuationConfig cfg,
                                 std::string label) {
    return Evaluator{
        [dN, cfg](cplx s) { return zeta_continued(*dN, s, cfg); },
        [dN, cfg](cplx s) { return zeta_derivative(*dN, s, cfg); },
        std::move(label)};
}

Evaluator continuation_evaluator(const NumberSystem& sys, ContinuationConfig cfg) {
    auto dN = std::make_shared<PointMeasure>(sys.count_measure());
    return continuation_evaluator(std::move(dN), cfg, "continued");
}

// ---------------------------------------------------------------------------
// Mollifiers
// ---------------------------------------------------------------------------

cplx mollifier(const NumberSystem& sys, double X, cplx s) {
    if (X > sys.x_max()) throw validation_error("mollifier: X exceeds x_max");
    const auto& mu = sys.mu_measure();
    const std::size_t hi = mu.upper_index(X);
    kahan_csum acc;
    for (std::size_t i = 0; i < hi; ++i)
        acc.add(mu.weight(i) * std::exp(-s * mu.log_locations()[i]));
    return acc.value();
}

PointMeasure mollified_coeffs(const NumberSystem& sys, double X) {
    if (X > sys.x_max()) throw validation_error("mollified_coeffs: X exceeds x_max");
    return convolve(sys.count_measure(), sys.mu_measure().restricted(X), sys.x_max());
}

PointMeasure mu_measure_upto(const PointMeasure& dN, double X) {
    return conv_inverse(dN.restricted(X), X);
}

PointMeasure mollified_coeffs(const PointMeasure& dN, double X) {
    if (X > dN.x_max()) throw validation_error("mollified_coeffs: X exceeds x_max");
    return convolve(dN, mu_measure_upto(dN, X), dN.x_max());
}

// ---------------------------------------------------------------------------
// Gamma-smoothed line integral
// ---------------------------------------------------------------------------

LineIntegral smoothing_line_integral(const Evaluator& zeta, const PointMeasure& muX, double theta,
                                     double sigma, double t, double Y, double quad_tol) {
    const double c = 0.5 * (1.0 + theta);
    const double a = c - sigma;
    if (std::abs(a) < 1e-6)
        throw numeric_error("smoothing_line_integral: Gamma pole at sigma == (1+theta)/2");
    const double logY = std::log(Y);
    const double Ya = std::pow(Y, a);

    // |Gamma(a+iv)| <= K e^{-|v|} for |v| >= 6 (true decay is e^{-pi|v|/2}).
    double K = 0.0;
    for (double v0 : {6.0, 8.0, 10.0})
        K = std::max(K, std::abs(gamma_complex({a, v0})) * std::exp(v0));
    K *= 1.5;

    // Rough sup of |zeta M| near the window, for the discarded-tail budget.
    double S_est = 1e-6;
    for (double v0 : {0.0, -1.5, 1.5, -3.0, 3.0, -6.0, 6.0}) {
        const cplx w(c, t + v0);
        S_est = std::max(S_est, std::abs(zeta.value(w).value) * std::abs(muX.mellin(w)));
    }
    S_est *= 3.0;

    double Z = 8.0;
    while (Z < 80.0 && 2.0 * K * S_est * Ya * std::exp(-Z) > quad_tol / 10.0) Z += 2.0;
    const double tail_bound = 2.0 * K * S_est * Ya * std::exp(-Z);

    auto integrand = [&](double v) -> std::pair<cplx, double> {
        const cplx w(c, t + v);
        const EvalResult zr = zeta.value(w);
        const cplx M = muX.mellin(w);
        const cplx G = gamma_complex({a, v});
        const cplx Yw = std::exp(cplx(a, v) * logY);
        return {zr.value * M * G * Yw, zr.err * std::abs(M) * std::abs(G) * Ya};
    };
    quad_options opt;
    opt.abstol = quad_tol;
    opt.parallel = true;
    const cquad_result q = integrate_complex(integrand, -Z, Z, opt);

    LineIntegral out;
    out.value = q.value;
    out.err = q.err_budget + q.abs_error + tail_bound;
    out.Z = Z;
    out.nevals = q.nevals;
    return out;
}

// ---------------------------------------------------------------------------
// Six-term identity
// ---------------------------------------------------------------------------

IdentityReport smoothing_identity(const PointMeasure& dN, const PointMeasure& muX,
                                  const ContinuationConfig& cfg, cplx s, double X, double Y) {
    const double sigma = s.real(), t = s.imag(), theta = cfg.theta;
    const double c = 0.5 * (1.0 + theta);
    if (!(sigma > c && sigma < 1.0))
        throw validation_error("smoothing_identity: need (1+theta)/2 < Re s < 1");
    if (std::abs(s - cplx(1.0, 0.0)) < 0.02)
        throw validation_error("smoothing_identity: s too close to 1");
    if (!(X <= Y && Y * Y <= dN.x_max()))
        throw validation_error("smoothing_identity: need X <= Y <= sqrt(x_max)");

    const double x_max = dN.x_max();
    // LHS truncation: a_n e^{-n/Y} beyond x_max, crudely |a_n| <= N(n)^2.
    const double lhs_tail = x_max * x_max * std::exp(-x_max / (2.0 * Y));
    if (lhs_tail > cfg.quad_tol)
        throw numeric_error("smoothing_identity: x_max too small for the e^{-n/Y} tail");

    const PointMeasure am = convolve(dN, muX, x_max);

    // LHS = sum a_n e^{-n/Y} n^-s (the n = 1 atom contributes e^{-1/Y}).
    const auto ws = am.weights();
    const auto lls = am.log_locations();
    const auto locs = am.locations();
    const cplx lhs = parallel_csum(am.size(), 8192, [&](std::size_t b, std::size_t e) {
        kahan_csum acc;
        for (std::size_t i = b; i < e; ++i) {
            const double damp = locs[i] / Y;
            if (damp > 700.0) continue;
            acc.add(ws[i] * std::exp(-damp) * std::exp(-s * lls[i]));
        }
        return acc.value();
    });

    const EvalResult zeta_s = zeta_continued(dN, s, cfg);
    const cplx M_s = muX.mellin(s);
    const cplx M_1 = muX.mellin(cplx(1.0, 0.0));
    const cplx term_residue = cfg.A * M_1 * gamma_complex(1.0 - s) * std::exp((1.0 - s) * std::log(Y));

    const Evaluator line_eval = Evaluator{
        [&dN, &cfg](cplx w) { return zeta_continued(dN, w, cfg); }, nullptr, "identity-line"};
    const LineIntegral line = smoothing_line_integral(line_eval, muX, theta, sigma, t, Y, cfg.quad_tol);

    IdentityReport rep;
    rep.lhs = lhs;
    rep.rhs = term_residue + zeta_s.value * M_s + line.value / two_pi;
    rep.residual = std::abs(rep.lhs - rep.rhs);
    rep.err = zeta_s.err * std::abs(M_s) + line.err / two_pi + lhs_tail;
    rep.Z = line.Z;
    rep.nevals = line.nevals;
    return rep;
}

IdentityReport smoothing_identity(const NumberSystem& sys, const ContinuationConfig& cfg, cplx s,
                                  double X, double Y) {
    return smoothing_identity(sys.count_measure(), sys.mu_measure().restricted(X), cfg, s, X, Y);
}

ConvexityRatio convexity_ratio(const Evaluator& zeta, double theta, double sigma, double t) {
    if (!(std::abs(t) >= 2.0)) throw validation_error("convexity_ratio: |t| must be >= 2");
    if (!(sigma > theta && sigma < 1.0))
        throw validation_error("convexity_ratio: need theta < sigma < 1");
    const EvalResult r = zeta.value({sigma, t});
    const double denom =
        std::pow(std::abs(t), (1.0 - sigma) / (1.0 - theta)) * std::log(std::abs(t));
    return {std::abs(r.value) / denom, r.err / denom};
}

}    // namespace beurling
