#include "beurling/mean_values.hpp"

#include "beurling/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace beurling {

namespace {

void check_spacing(const std::vector<double>& ts, double delta, const char* who) {
    for (std::size_t i = 0; i + 1 < ts.size(); ++i)
        if (!(ts[i + 1] - ts[i] >= delta))
            throw validation_error(std::string(who) + ": points closer than the spacing");
}

std::vector<double> sorted_imag(const std::vector<cplx>& ss) {
    std::vector<double> ts;
    ts.reserve(ss.size());
    for (cplx s : ss) ts.push_back(s.imag());
    std::sort(ts.begin(), ts.end());
    return ts;
}

// chi weights for the frequencies of S; every frequency must be a table value.
std::vector<double> chi_weights(const DirichletPolynomial& S, double eta,
                                const NumberSystem& sys) {
    const double N = S.max_freq();
    std::vector<double> out(S.size());
    for (std::size_t j = 0; j < S.size(); ++j) {
        const double f = S.freqs[j];
        if (sys.chi(f, 0.0) == 0)
            throw validation_error("mean value check: frequency is not a table value");
        out[j] = double(sys.chi(f, eta * N));
    }
    return out;
}

MeanValueReport make_report(double lhs, double rhs,
                            std::vector<std::pair<std::string, double>> params) {
    MeanValueReport rep;
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.ratio = rhs != 0.0 ? lhs / rhs
                           : (lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    rep.params = std::move(params);
    return rep;
}

}    // namespace

DirichletPolynomial::DirichletPolynomial(std::vector<double> fs, std::vector<cplx> cs)
    : freqs(std::move(fs)), coeffs(std::move(cs)) {
    if (freqs.size() != coeffs.size())
        throw validation_error("DirichletPolynomial: size mismatch");
    for (std::size_t i = 0; i < freqs.size(); ++i) {
        if (!(freqs[i] >= 1.0))
            throw validation_error("DirichletPolynomial: frequencies must be >= 1");
        if (i > 0 && freqs[i] < freqs[i - 1])
            throw validation_error("DirichletPolynomial: frequencies must be sorted");
    }
}

cplx DirichletPolynomial::at(cplx s) const {
    kahan_csum acc;
    for (std::size_t j = 0; j < size(); ++j)
        acc.add(coeffs[j] * std::exp(-s * std::log(freqs[j])));
    return acc.value();
}

cplx DirichletPolynomial::at_it(double t) const { return at(cplx(0.0, t)); }

std::string to_json(const MeanValueReport& rep) {
    std::string out = "{\"lhs\":" + fmt_double(rep.lhs) + ",\"rhs\":" + fmt_double(rep.rhs) +
                      ",\"ratio\":" + fmt_double(rep.ratio) + ",\"params\":{";
    for (std::size_t i = 0; i < rep.params.size(); ++i) {
        if (i) out += ',';
        out += '"' + rep.params[i].first + "\":" + fmt_double(rep.params[i].second);
    }
    out += '}';
    if (rep.seed) out += ",\"seed\":" + std::to_string(*rep.seed);
    out += '}';
    return out;
}

double poly_mean_square(const DirichletPolynomial& S, double T0, double T) {
    if (!(T > 0.0)) throw validation_error("poly_mean_square: T must be positive");
    const std::size_t J = S.size();
    std::vector<double> logf(J);
    for (std::size_t j = 0; j < J; ++j) logf[j] = std::log(S.freqs[j]);

    // int_{T0}^{T0+T} r^{-it} dt with r = n_j/n_l, L = log r:
    //   e^{-i T0 L} (1 - e^{-i T L}) / (i L),
    // expanded as T sum_k (-i T L)^k/(k+1)! when |L| is tiny.
    auto cross = [&](double L) -> cplx {
        const cplx phase = std::exp(cplx(0.0, -T0 * L));
        if (std::abs(L) < 1e-6) {
            const cplx z(0.0, -T * L);
            cplx term(1.0, 0.0), sum(1.0, 0.0);
            for (int k = 1; k <= 6; ++k) {
                term *= z / double(k + 1);
                sum += term;
            }
            return phase * T * sum;
        }
        const cplx num = 1.0 - std::exp(cplx(0.0, -T * L));
        return phase * num / cplx(0.0, L);
    };

    kahan_sum acc;
    for (std::size_t j = 0; j < J; ++j) acc.add(std::norm(S.coeffs[j]) * T);
    for (std::size_t j = 0; j < J; ++j)
        for (std::size_t l = j + 1; l < J; ++l) {
            const cplx c = S.coeffs[j] * std::conj(S.coeffs[l]) * cross(logf[j] - logf[l]);
            acc.add(2.0 * c.real());
        }
    return acc.value();
}

MeanValueReport mvt_check(const DirichletPolynomial& S, double T0, double T, double eta,
                          const NumberSystem& sys) {
    if (!(eta > 0.0)) throw validation_error("mvt_check: eta must be positive");
    const auto chis = chi_weights(S, eta, sys);
    const double lhs = poly_mean_square(S, T0, T);
    kahan_sum rhs;
    for (std::size_t j = 0; j < S.size(); ++j) rhs.add(chis[j] * std::norm(S.coeffs[j]));
    const double rhs_val = (T + 1.0 / eta) * rhs.value();
    return make_report(lhs, rhs_val,
                       {{"T0", T0}, {"T", T}, {"eta", eta}, {"N", S.max_freq()}});
}

MeanValueReport discrete_mvt_check(const DirichletPolynomial& S, const std::vector<double>& ts,
                                   double eta, double delta, const NumberSystem& sys) {
    if (ts.empty()) throw validation_error("discrete_mvt_check: no points");
    if (!(eta > 0.0 && delta > 0.0))
        throw validation_error("discrete_mvt_check: eta, delta must be positive");
    auto sorted = ts;
    std::sort(sorted.begin(), sorted.end());
    check_spacing(sorted, delta, "discrete_mvt_check");
    const double T = (sorted.back() - sorted.front()) + delta;
    const double N = S.max_freq();

    kahan_sum lhs;
    for (double t : ts) lhs.add(std::norm(S.at_it(t)));
    const auto chis = chi_weights(S, eta, sys);
    kahan_sum coef;
    for (std::size_t j = 0; j < S.size(); ++j) coef.add(chis[j] * std::norm(S.coeffs[j]));
    const double rhs = (T + 1.0 / eta) * (std::log(N) + 1.0 / delta) * coef.value();
    return make_report(lhs.value(), rhs,
                       {{"T", T},
                        {"eta", eta},
                        {"delta", delta},
                        {"N", N},
                        {"points", double(ts.size())}});
}

MeanValueReport discrete_mvt_check(const DirichletPolynomial& S, const std::vector<cplx>& ss,
                                   double eta, double delta, const NumberSystem& sys,
                                   double alpha) {
    if (ss.empty()) throw validation_error("discrete_mvt_check: no points");
    const double N = S.min_freq();
    if (!(S.max_freq() <= 2.0 * N))
        throw validation_error("discrete_mvt_check: frequencies must lie in [N, 2N]");
    for (cplx s : ss)
        if (!(s.real() >= alpha))
            throw validation_error("discrete_mvt_check: point with Re s < alpha");
    auto ts = sorted_imag(ss);
    check_spacing(ts, delta, "discrete_mvt_check");
    const double T = (ts.back() - ts.front()) + delta;

    kahan_sum lhs;
    for (cplx s : ss) lhs.add(std::norm(S.at(s)));
    const auto chis = chi_weights(S, eta, sys);
    kahan_sum coef;
    for (std::size_t j = 0; j < S.size(); ++j) coef.add(chis[j] * std::norm(S.coeffs[j]));
    const double rhs = (T + 1.0 / eta) * (std::log(N) + 1.0 / delta) * coef.value() /
                       std::pow(N, 2.0 * alpha);
    return make_report(lhs.value(), rhs,
                       {{"T", T},
                        {"eta", eta},
                        {"delta", delta},
                        {"N", N},
                        {"alpha", alpha},
                        {"points", double(ss.size())}});
}

MomentReport vertical_moment(const Evaluator& zeta, double sigma, double T, double two_k,
                             double quad_tol, bool use_derivative) {
    if (!(T > 0.0 && two_k > 0.0))
        throw validation_error("vertical_moment: T and two_k must be positive");
    const auto& f = use_derivative ? zeta.derivative : zeta.value;
    if (!f) throw validation_error("vertical_moment: evaluator lacks a derivative");

    auto integrand = [&](double t) -> std::pair<double, double> {
        const EvalResult r = f({sigma, t});
        const double a = std::abs(r.value);
        const double v = std::pow(a * a, 0.5 * two_k);
        // d|f|^{2k} = 2k |f|^{2k-1} d|f|
        const double err = two_k * std::pow(std::max(a, 1e-300), two_k - 1.0) * r.err;
        return {v / T, err / T};
    };
    quad_options opt;
    opt.abstol = quad_tol;
    opt.max_panels = 1u << 22;
    opt.parallel = true;
    const quad_result q = integrate_err(integrand, 0.0, T, opt);
    if (q.err_budget > 0.5 * std::abs(q.value) && q.err_budget > 10.0 * quad_tol)
        throw numeric_error("vertical_moment: evaluator error dominates the integrand");
    return {q.value, q.err_budget, q.nevals};
}

MeanValueReport bombieri_check(const DirichletPolynomial& S, double N,
                               const std::vector<double>& ts, const NumberSystem& sys) {
    if (!(N >= 1.0)) throw validation_error("bombieri_check: N must be >= 1");
    for (double f : S.freqs)
        if (!(f >= N && f <= 2.0 * N))
            throw validation_error("bombieri_check: frequencies must lie in [N, 2N]");
    auto sorted = ts;
    std::sort(sorted.begin(), sorted.end());
    check_spacing(sorted, 1.0, "bombieri_check");

    auto weight = [N](double v) { return std::exp(-v / (2.0 * N)) - std::exp(-v / N); };

    kahan_sum lhs;
    for (double t : ts) lhs.add(std::norm(S.at_it(t)));

    kahan_sum xi2;
    for (std::size_t j = 0; j < S.size(); ++j) {
        const double w = weight(S.freqs[j]);
        if (w <= 0.0) throw numeric_error("bombieri_check: smoothing weight underflow");
        xi2.add(std::norm(S.coeffs[j]) / w);
    }

    // Inner products over the full table (entries with underflowed weights
    // contribute nothing and are skipped).
    const auto& dN = sys.count_measure();
    std::size_t hi = dN.size();
    while (hi > 0 && weight(dN.location(hi - 1)) < 1e-300) --hi;
    const auto locs = dN.locations();
    const auto ws = dN.weights();
    const auto lls = dN.log_locations();
    std::vector<double> smooth(hi);
    for (std::size_t i = 0; i < hi; ++i) smooth[i] = ws[i] * weight(locs[i]);

    auto inner_abs = [&](double tau) {
        const cplx v = parallel_csum(hi, 8192, [&](std::size_t b, std::size_t e) {
            kahan_csum acc;
            for (std::size_t i = b; i < e; ++i)
                acc.add(smooth[i] * std::exp(cplx(0.0, -tau * lls[i])));
            return acc.value();
        });
        return std::abs(v);
    };

    const std::size_t R = ts.size();
    std::vector<std::vector<double>> mag(R, std::vector<double>(R, 0.0));
    const double diag = inner_abs(0.0);
    for (std::size_t r = 0; r < R; ++r) {
        mag[r][r] = diag;
        for (std::size_t s = r + 1; s < R; ++s) {
            const double m = inner_abs(ts[r] - ts[s]);
            mag[r][s] = m;
            mag[s][r] = m;    // |conjugate|
        }
    }
    double max_row = 0.0;
    for (std::size_t r = 0; r < R; ++r) {
        kahan_sum row;
        for (std::size_t s = 0; s < R; ++s) row.add(mag[r][s]);
        max_row = std::max(max_row, row.value());
    }
    const double rhs = xi2.value() * max_row;
    return make_report(lhs.value(), rhs, {{"N", N}, {"points", double(R)}});
}

MeanValueReport gallagher_check(const Evaluator& zeta, double sigma,
                                const std::vector<double>& ts, double T, double Z,
                                double quad_tol) {
    if (!(Z >= 1.0)) throw validation_error("gallagher_check: Z must be >= 1");
    auto sorted = ts;
    std::sort(sorted.begin(), sorted.end());
    check_spacing(sorted, Z, "gallagher_check");
    for (double t : ts)
        if (std::abs(t) > T) throw validation_error("gallagher_check: point outside [-T, T]");

    kahan_sum lhs;
    for (double t : ts) lhs.add(std::norm(zeta.value({sigma, t}).value));

    auto deriv = [&](cplx s) -> cplx {
        if (zeta.has_derivative()) return zeta.derivative(s).value;
        const double h = 1e-5;
        return (zeta.value(s + h).value - zeta.value(s - h).value) / (2.0 * h);
    };
    auto integrand = [&](double t) -> std::pair<double, double> {
        const cplx z = zeta.value({sigma, t}).value;
        const cplx dz = deriv({sigma, t});
        return {std::norm(z) + std::abs(z * dz), 0.0};
    };
    quad_options opt;
    opt.abstol = quad_tol * std::max(1.0, 2.0 * (T + Z));
    opt.max_panels = 1u << 22;
    opt.parallel = true;
    const quad_result q = integrate_err(integrand, -T - Z, T + Z, opt);
    return make_report(lhs.value(), q.value,
                       {{"sigma", sigma}, {"T", T}, {"Z", Z}, {"points", double(ts.size())}});
}

MontgomeryReport montgomery_experiment(const NumberSystem& sys, double N, double T, double nu,
                                       const std::vector<std::uint64_t>& seeds,
                                       double quad_tol) {
    if (!(nu >= 1.0 && nu <= 2.0))
        throw validation_error("montgomery_experiment: nu must lie in [1, 2]");
    const double theta = sys.theta_hint().value_or(0.0);

    // Frequencies: table values <= N.
    std::vector<double> freqs;
    for (const auto& row : sys.table()) {
        if (row.value > N) break;
        freqs.push_back(row.value);
    }

    MontgomeryReport out;
    out.nu = nu;
    const double rhs =
        (T * std::pow(N, nu * theta) + std::pow(N, nu)) * std::pow(N, nu);
    for (std::uint64_t seed : seeds) {
        rng64 rng(seed);
        std::vector<cplx> coeffs;
        coeffs.reserve(freqs.size());
        for (std::size_t i = 0; i < freqs.size(); ++i) coeffs.push_back(rng.unit_disc());
        const DirichletPolynomial S(freqs, std::move(coeffs));

        auto integrand = [&](double t) -> std::pair<double, double> {
            const double a2 = std::norm(S.at_it(t));
            return {std::pow(a2, nu), 0.0};
        };
        quad_options opt;
        opt.abstol = quad_tol * std::max(1.0, rhs);
        opt.max_panels = 1u << 22;
        opt.parallel = true;
        const quad_result q = integrate_err(integrand, 0.0, T, opt);

        MeanValueReport rep = make_report(q.value, rhs,
                                          {{"N", N}, {"T", T}, {"nu", nu}, {"theta", theta}});
        rep.seed = seed;
        out.trials.push_back(std::move(rep));
        out.max_ratio = std::max(out.max_ratio, out.trials.back().ratio);
    }
    return out;
}

}    // namespace beurling
