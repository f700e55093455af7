#include "beurling/zeros.hpp"

#include <algorithm>
#include <cmath>

namespace beurling {

namespace {

constexpr double pi = 3.141592653589793238462643383279502884;
constexpr double two_pi = 2.0 * pi;

void check_sample(const EvalResult& r) {
    const double a = std::abs(r.value);
    if (a < 3.0 * r.err)
        throw boundary_error("contour: zero on boundary suspected (|zeta| < 3 err)");
    if (r.err >= 0.5 * a)
        throw boundary_error("contour: evaluator error too large relative to |zeta|");
}

struct EdgeNode {
    double x;    // parameter in [0, 1]
    cplx F;
};

// Total phase change of zeta along the segment s0 -> s1.  A node whose |zeta|
// collapses relative to the rest of the edge means a zero sits (numerically)
// on the boundary: bail out fast with boundary_error so the caller can nudge
// the contour instead of grinding toward the sample cap.
double edge_phase(const Evaluator& zeta, cplx s0, cplx s1, const ContourOptions& opt) {
    const double len = std::abs(s1 - s0);
    // The argument of a zeta-like function advances at ~log(height) per unit
    // height; the initial mesh must beat that rate or a full 2 pi lap between
    // samples aliases into a small increment the split test cannot see.
    const double t_scale = std::max(std::abs(s0.imag()), std::abs(s1.imag()));
    const double density = 3.0 + 1.2 * std::log1p(t_scale);
    const std::size_t initial =
        std::clamp<std::size_t>(std::size_t(len * density), 16, 1u << 17) + 1;

    double edge_max = 0.0;
    auto admit = [&](const EvalResult& r) {
        check_sample(r);
        edge_max = std::max(edge_max, std::abs(r.value));
        if (std::abs(r.value) < 1e-9 * edge_max)
            throw boundary_error("contour: |zeta| collapsed on the boundary");
    };

    std::vector<EdgeNode> nodes(initial);
    {
        std::vector<EvalResult> vals(initial);
        parallel_chunks(initial, 1, [&](std::size_t, std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) {
                const double x = double(i) / double(initial - 1);
                vals[i] = zeta.value(s0 + x * (s1 - s0));
            }
        });
        for (std::size_t i = 0; i < initial; ++i) {
            admit(vals[i]);
            nodes[i] = {double(i) / double(initial - 1), vals[i].value};
        }
    }

    auto needs_split = [](const EdgeNode& a, const EdgeNode& b) {
        const double da = std::abs(std::arg(b.F / a.F));
        const double df = std::abs(b.F - a.F);
        return da >= 0.45 * pi || df >= 0.5 * (std::abs(a.F) + std::abs(b.F));
    };

    bool verified = false;
    while (true) {
        std::vector<double> mids;
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
            if (needs_split(nodes[i], nodes[i + 1])) {
                const double mid = 0.5 * (nodes[i].x + nodes[i + 1].x);
                if (nodes[i + 1].x - nodes[i].x < 0x1p-40)
                    throw boundary_error("contour: refinement interval collapsed");
                mids.push_back(mid);
            }
        if (mids.empty()) {
            if (verified) break;
            // One forced halving of every interval: a residual alias shows up
            // as a split request on the finer mesh and refinement resumes.
            verified = true;
            for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
                mids.push_back(0.5 * (nodes[i].x + nodes[i + 1].x));
        }
        if (nodes.size() + mids.size() > opt.max_edge_samples)
            throw nonconvergence_error("contour: edge sample cap exceeded");

        std::vector<EvalResult> vals(mids.size());
        parallel_chunks(mids.size(), 1, [&](std::size_t, std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) vals[i] = zeta.value(s0 + mids[i] * (s1 - s0));
        });
        std::vector<EdgeNode> fresh(mids.size());
        for (std::size_t i = 0; i < mids.size(); ++i) {
            admit(vals[i]);
            fresh[i] = {mids[i], vals[i].value};
        }
        std::vector<EdgeNode> merged;
        merged.reserve(nodes.size() + fresh.size());
        std::merge(nodes.begin(), nodes.end(), fresh.begin(), fresh.end(),
                   std::back_inserter(merged),
                   [](const EdgeNode& a, const EdgeNode& b) { return a.x < b.x; });
        nodes = std::move(merged);
    }

    kahan_sum phase;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        phase.add(std::arg(nodes[i + 1].F / nodes[i].F));
    return phase.value();
}

// Winding number around the rectangle boundary (counter-clockwise).  This is
// zeros minus poles; callers correct for a known pole where applicable.
std::int64_t winding_raw(const Evaluator& zeta, double a, double sr, double tl, double th,
                         const ContourOptions& opt) {
    kahan_sum total;
    total.add(edge_phase(zeta, {a, tl}, {sr, tl}, opt));
    total.add(edge_phase(zeta, {sr, tl}, {sr, th}, opt));
    total.add(edge_phase(zeta, {sr, th}, {a, th}, opt));
    total.add(edge_phase(zeta, {a, th}, {a, tl}, opt));
    const double w = total.value() / two_pi;
    const double rounded = std::round(w);
    if (std::abs(w - rounded) > 0.25)
        throw nonconvergence_error("contour: winding number failed to settle on an integer");
    return std::int64_t(rounded);
}

}    // namespace

void Rectangle::validate(double theta) const {
    if (!(theta < alpha && alpha < sigma_right))
        throw validation_error("Rectangle: need theta < alpha < sigma_right");
    if (!(t_low < t_high)) throw validation_error("Rectangle: need t_low < t_high");
    if (!(t_low > 0.0 || sigma_right < 1.0))
        throw validation_error("Rectangle: boundary must avoid the pole s = 1");
}

std::int64_t winding_count(const Evaluator& zeta, const Rectangle& rect, double theta,
                           const ContourOptions& opt) {
    rect.validate(theta);
    return winding_raw(zeta, rect.alpha, rect.sigma_right, rect.t_low, rect.t_high, opt);
}

// ---------------------------------------------------------------------------
// Localization
// ---------------------------------------------------------------------------

namespace {

ZeroRecord refine_zero(const Evaluator& zeta, cplx center, double cell_w, double cell_h,
                       const ContourOptions& opt) {
    const double scale = std::max(cell_w, cell_h);
    auto deriv = [&](cplx z) -> cplx {
        if (zeta.has_derivative()) return zeta.derivative(z).value;
        const double h = 1e-6 * std::max(1.0, std::abs(z));
        return (zeta.value(z + h).value - zeta.value(z - h).value) / (2.0 * h);
    };

    cplx z = center;
    EvalResult f = zeta.value(z);
    // Secant warm-up along the dominant direction.
    {
        cplx z_prev = center + cplx(0.25 * cell_w, 0.1 * cell_h);
        cplx f_prev = zeta.value(z_prev).value;
        for (int i = 0; i < 8 && std::abs(f.value) > 1e-3; ++i) {
            const cplx denom = f.value - f_prev;
            if (std::abs(denom) == 0.0) break;
            const cplx znew = z - f.value * (z - z_prev) / denom;
            z_prev = z;
            f_prev = f.value;
            z = znew;
            f = zeta.value(z);
        }
    }
    // Damped Newton polish.
    for (int iter = 0; iter < 60; ++iter) {
        if (std::abs(f.value) <= opt.refine_tol) break;
        const cplx d = deriv(z);
        if (std::abs(d) == 0.0) throw nonconvergence_error("refine: vanishing derivative");
        cplx step = f.value / d;
        double lambda = 1.0;
        for (int halvings = 0; halvings < 8; ++halvings) {
            const cplx cand = z - lambda * step;
            const EvalResult fc = zeta.value(cand);
            if (std::abs(fc.value) < std::abs(f.value)) {
                z = cand;
                f = fc;
                break;
            }
            lambda *= 0.5;
            if (halvings == 7) throw nonconvergence_error("refine: Newton damping failed");
        }
        if (std::abs(z - center) > 8.0 * scale + 1.0)
            throw nonconvergence_error("refine: iterate left the cell neighbourhood");
    }
    if (std::abs(f.value) > opt.refine_tol)
        throw nonconvergence_error("refine: |zeta| did not reach tolerance");
    if (std::abs(z.real() - center.real()) > 0.75 * cell_w + 1e-6 ||
        std::abs(z.imag() - center.imag()) > 0.75 * cell_h + 1e-6)
        throw nonconvergence_error("refine: converged outside the owning cell");
    return ZeroRecord{z, std::abs(f.value) + f.err, ZeroClass::Unclassified};
}

void localize_rec(const Evaluator& zeta, double a, double sr, double tl, double th, double theta,
                  const ContourOptions& opt, std::int64_t count, std::vector<ZeroRecord>& out,
                  int depth) {
    if (count == 0) return;
    const double w = sr - a, h = th - tl;
    if (depth > 48) throw nonconvergence_error("localize: recursion too deep");
    if ((count == 1 && std::max(w, h) < 0.35) || std::max(w, h) < opt.min_cell) {
        const ZeroRecord rec = refine_zero(zeta, {a + 0.5 * w, tl + 0.5 * h}, w, h, opt);
        for (std::int64_t i = 0; i < count; ++i) out.push_back(rec);
        return;
    }
    // Split the longer side; nudge the cut if a zero sits on it.
    const bool vertical = h >= w;    // split in t when the cell is tall
    for (double frac : {0.5, 0.46, 0.55, 0.42, 0.6}) {
        const double cut = vertical ? tl + frac * h : a + frac * w;
        try {
            std::int64_t c1, c2;
            if (vertical) {
                c1 = winding_raw(zeta, a, sr, tl, cut, opt);
                c2 = winding_raw(zeta, a, sr, cut, th, opt);
            } else {
                c1 = winding_raw(zeta, a, cut, tl, th, opt);
                c2 = winding_raw(zeta, cut, sr, tl, th, opt);
            }
            if (c1 + c2 != count)
                throw boundary_error("localize: split counts disagree with parent");
            if (vertical) {
                localize_rec(zeta, a, sr, tl, cut, theta, opt, c1, out, depth + 1);
                localize_rec(zeta, a, sr, cut, th, theta, opt, c2, out, depth + 1);
            } else {
                localize_rec(zeta, a, cut, tl, th, theta, opt, c1, out, depth + 1);
                localize_rec(zeta, cut, sr, tl, th, theta, opt, c2, out, depth + 1);
            }
            return;
        } catch (const boundary_error&) {
            continue;    // zero on the cut line: try a nudged split
        }
    }
    throw nonconvergence_error("localize: could not find a clean split line");
}

}    // namespace

std::vector<ZeroRecord> localize_zeros(const Evaluator& zeta, const Rectangle& rect, double theta,
                                       const ContourOptions& opt) {
    rect.validate(theta);
    const std::int64_t count = winding_raw(zeta, rect.alpha, rect.sigma_right, rect.t_low,
                                           rect.t_high, opt);
    std::vector<ZeroRecord> out;
    out.reserve(std::size_t(std::max<std::int64_t>(count, 0)));
    localize_rec(zeta, rect.alpha, rect.sigma_right, rect.t_low, rect.t_high, theta, opt, count,
                 out, 0);
    std::sort(out.begin(), out.end(), [](const ZeroRecord& x, const ZeroRecord& y) {
        if (x.rho.imag() != y.rho.imag()) return x.rho.imag() < y.rho.imag();
        return x.rho.real() < y.rho.real();
    });
    return out;
}

// ---------------------------------------------------------------------------
// Density tables
// ---------------------------------------------------------------------------

DensityTable density_table(const Evaluator& zeta, std::vector<double> alphas,
                           std::vector<double> Ts, double theta, const ContourOptions& opt) {
    if (alphas.empty() || Ts.empty()) throw validation_error("density_table: empty grids");
    if (!std::is_sorted(Ts.begin(), Ts.end()))
        throw validation_error("density_table: Ts must ascend");

    DensityTable table;
    table.alphas = std::move(alphas);
    table.Ts = std::move(Ts);
    table.sigma_cap = 1.1;
    table.t0 = std::min(0.5, table.Ts.front() / 4.0);

    for (double alpha : table.alphas) {
        if (!(alpha > theta)) throw validation_error("density_table: alpha must exceed theta");
        // Symmetric strip |t| <= t0: gamma = 0 zeros counted once, conjugate
        // pairs twice, automatically.  The strip encloses the simple pole at
        // s = 1 whenever alpha < 1, shifting the winding by -1.
        std::int64_t strip =
            winding_raw(zeta, alpha, table.sigma_cap, -table.t0, table.t0, opt);
        if (opt.expect_pole_at_one && alpha < 1.0 && table.sigma_cap > 1.0) strip += 1;
        table.strip_counts.push_back(strip);
        table.real_zero_flag.push_back(strip % 2 != 0);

        std::vector<std::int64_t> row;
        std::int64_t acc = strip;
        double t_prev = table.t0;
        for (double T : table.Ts) {
            acc += 2 * winding_raw(zeta, alpha, table.sigma_cap, t_prev, T, opt);
            row.push_back(acc);
            t_prev = T;
        }
        table.counts.push_back(std::move(row));
    }

    // Monotone: non-increasing in alpha, non-decreasing in T (by construction).
    for (std::size_t i = 0; i + 1 < table.alphas.size(); ++i) {
        if (table.alphas[i] >= table.alphas[i + 1]) continue;    // only comparable ascending
        for (std::size_t j = 0; j < table.Ts.size(); ++j)
            if (table.counts[i][j] < table.counts[i + 1][j])
                throw nonconvergence_error("density_table: alpha-monotonicity violated");
    }
    return table;
}

std::vector<DensityFitRow> fit_density_exponent(const DensityTable& table, double theta) {
    std::vector<DensityFitRow> rows;
    for (std::size_t i = 0; i < table.alphas.size(); ++i) {
        DensityFitRow row;
        row.alpha = table.alphas[i];
        row.c_paper = density_exponent_bound(row.alpha, theta);
        std::vector<std::pair<double, double>> pts;    // (log T, log N)
        for (std::size_t j = 0; j < table.Ts.size(); ++j)
            if (table.counts[i][j] > 0)
                pts.emplace_back(std::log(table.Ts[j]), std::log(double(table.counts[i][j])));
        row.points_used = pts.size();
        if (pts.size() >= 3) {
            double mx = 0, my = 0;
            for (auto [x, y] : pts) {
                mx += x;
                my += y;
            }
            mx /= double(pts.size());
            my /= double(pts.size());
            double num = 0, den = 0;
            for (auto [x, y] : pts) {
                num += (x - mx) * (y - my);
                den += (x - mx) * (x - mx);
            }
            if (den > 0) row.c_hat = num / den;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

double critical_line_count_asymptotic(double theta, double T) {
    // Classical counting asymptotic through the affine zero map: ordinates up
    // to T/(1-theta), both half-planes.  The secondary terms matter at desk
    // heights, so keep u(log u - 1) + 7/8 rather than the bare main term.
    const double x = T / (1.0 - theta);
    const double u = x / two_pi;
    return 2.0 * (u * (std::log(u) - 1.0) + 7.0 / 8.0);
}

LocalWindowReport local_window_check(const Evaluator& zeta, double alpha, double T, double theta,
                                     const ContourOptions& opt) {
    if (!(T >= 2.0)) throw validation_error("local_window_check: T must be >= 2");
    Rectangle rect{alpha, 1.1, 2.0, T};
    const auto zeros = localize_zeros(zeta, rect, theta, opt);
    LocalWindowReport rep;
    rep.zero_count = std::int64_t(zeros.size());
    const double logT = std::log(T);
    for (const auto& z : zeros) {
        const double t = std::min(z.rho.imag(), T - 1.0);
        std::int64_t count = 0;
        for (const auto& w : zeros)
            if (w.rho.imag() >= t && w.rho.imag() <= t + 1.0) ++count;
        if (double(count) / logT > rep.max_ratio) {
            rep.max_ratio = double(count) / logT;
            rep.window_t = t;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

ClassifyReport classify_zero(const Evaluator& zeta, const PointMeasure& coeffs,
                             const PointMeasure& muX, double theta, cplx rho, double X, double Y,
                             double quad_tol, double zero_tol) {
    const double beta = rho.real(), gamma = rho.imag();
    const double c = 0.5 * (1.0 + theta);
    if (!(X <= Y && Y * Y <= coeffs.x_max()))
        throw validation_error("classify_zero: need X <= Y <= sqrt(x_max)");
    const EvalResult at_rho = zeta.value(rho);
    if (std::abs(at_rho.value) > zero_tol + at_rho.err)
        throw validation_error("classify_zero: rho is not a refined zero of the evaluator");

    ClassifyReport rep;
    rep.threshold2 = two_pi / 6.0;

    // Dirichlet-polynomial route: X < n <= Y^2.
    {
        kahan_csum acc;
        const std::size_t lo = coeffs.upper_index(X);
        const std::size_t hi = coeffs.upper_index(Y * Y);
        for (std::size_t i = lo; i < hi; ++i) {
            const double n = coeffs.location(i);
            acc.add(coeffs.weight(i) * std::exp(-n / Y) * std::exp(-rho * std::log(n)));
        }
        rep.type1 = std::abs(acc.value());
    }

    // Contour route; the Gamma factor has a pole when beta hits the line.
    if (beta > c + 1e-3) {
        const LineIntegral li =
            smoothing_line_integral(zeta, muX, theta, beta, gamma, Y, quad_tol);
        rep.type2 = std::abs(li.value);
        rep.type2_evaluated = true;
    }

    if (rep.type1 >= rep.threshold1)
        rep.cls = ZeroClass::TypeI;
    else if (rep.type2_evaluated && rep.type2 >= rep.threshold2)
        rep.cls = ZeroClass::TypeII;
    else
        rep.cls = ZeroClass::Neither;
    return rep;
}

ClassifyReport classify_zero(const Evaluator& zeta, const NumberSystem& sys, double theta,
                             cplx rho, double X, double Y, double quad_tol, double zero_tol) {
    return classify_zero(zeta, mollified_coeffs(sys, X), sys.mu_measure().restricted(X), theta,
                         rho, X, Y, quad_tol, zero_tol);
}

}    // namespace beurling
