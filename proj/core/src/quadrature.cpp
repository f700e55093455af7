#include "beurling/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace beurling {

namespace {

// QUADPACK dqk15 abscissae/weights.
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class Value>
struct panel {
    double a, b;
    Value integral{};
    double err = 0.0;       // |K15 - G7|
    double budget = 0.0;    // error-density integral
};

// One K15 rule application.  Eval must return std::pair<Value,double>.
template <class Value, class F>
void apply_rule(panel<Value>& p, const F& f, std::size_t& nevals) {
    const double c = 0.5 * (p.a + p.b), h = 0.5 * (p.b - p.a);
    Value kron{};
    Value gauss{};
    double budget = 0.0;
    for (int j = 0; j < 8; ++j) {
        if (j == 7) {
            auto [v, e] = f(c);
            kron += wgk[7] * v;
            gauss += wg[3] * v;
            budget += wgk[7] * e;
            nevals += 1;
            break;
        }
        auto [v1, e1] = f(c - h * xgk[j]);
        auto [v2, e2] = f(c + h * xgk[j]);
        kron += wgk[j] * (v1 + v2);
        budget += wgk[j] * (e1 + e2);
        if (j % 2 == 1) gauss += wg[j / 2] * (v1 + v2);
        nevals += 2;
    }
    p.integral = h * kron;
    p.err = h * std::abs(kron - gauss);
    p.budget = h * budget;
}

template <class Value, class F>
void run_adaptive(const F& f, double a, double b, const quad_options& opt, Value& value,
                  double& abs_error, double& err_budget, std::size_t& nevals) {
    if (!(b > a)) {
        value = Value{};
        abs_error = err_budget = 0.0;
        return;
    }
    const double total_width = b - a;
    std::vector<panel<Value>> panels(1);
    panels[0].a = a;
    panels[0].b = b;
    std::vector<std::size_t> fresh{0};
    std::size_t total_evals = 0;

    while (true) {
        // Evaluate fresh panels; per-panel work is independent.
        if (opt.parallel && fresh.size() > 1) {
            std::vector<std::size_t> counts(fresh.size(), 0);
            parallel_chunks(fresh.size(), 1, [&](std::size_t k, std::size_t lo, std::size_t hi) {
                (void)k;
                for (std::size_t i = lo; i < hi; ++i) apply_rule(panels[fresh[i]], f, counts[i]);
            });
            for (auto c : counts) total_evals += c;
        } else {
            for (std::size_t i : fresh) apply_rule(panels[i], f, total_evals);
        }

        double err_total = 0.0;
        for (const auto& p : panels) err_total += p.err;
        if (err_total <= opt.abstol) break;

        // Split every panel exceeding its width-proportional error share.
        std::vector<std::size_t> next;
        const std::size_t before = panels.size();
        for (std::size_t i = 0; i < before; ++i) {
            auto& p = panels[i];
            if (p.err > opt.abstol * ((p.b - p.a) / total_width)) {
                if (panels.size() + 1 > opt.max_panels)
                    throw numeric_error("quadrature failed to converge within panel budget");
                const double mid = 0.5 * (p.a + p.b);
                panel<Value> right;
                right.a = mid;
                right.b = p.b;
                p.b = mid;
                panels.push_back(right);
                next.push_back(i);
                next.push_back(panels.size() - 1);
            }
        }
        if (next.empty()) break;    // nothing exceeded its share
        fresh = std::move(next);
    }

    std::sort(panels.begin(), panels.end(),
              [](const auto& x, const auto& y) { return x.a < y.a; });
    Value acc{};
    double err_acc = 0.0, budget_acc = 0.0;
    for (const auto& p : panels) {
        acc += p.integral;
        err_acc += p.err;
        budget_acc += p.budget;
    }
    value = acc;
    abs_error = err_acc;
    err_budget = budget_acc;
    nevals = total_evals;
}

}    // namespace

quad_result integrate(const std::function<double(double)>& f, double a, double b,
                      const quad_options& opt) {
    quad_result r;
    auto wrapped = [&f](double x) { return std::pair<double, double>(f(x), 0.0); };
    run_adaptive<double>(wrapped, a, b, opt, r.value, r.abs_error, r.err_budget, r.nevals);
    return r;
}

quad_result integrate_err(const std::function<std::pair<double, double>(double)>& f, double a,
                          double b, const quad_options& opt) {
    quad_result r;
    run_adaptive<double>(f, a, b, opt, r.value, r.abs_error, r.err_budget, r.nevals);
    return r;
}

cquad_result integrate_complex(const std::function<std::pair<cplx, double>(double)>& f, double a,
                               double b, const quad_options& opt) {
    cquad_result r;
    run_adaptive<cplx>(f, a, b, opt, r.value, r.abs_error, r.err_budget, r.nevals);
    return r;
}

double log_integral(double x) {
    if (!(x > 1.0)) throw validation_error("log_integral: x must exceed 1");
    quad_options opt;
    opt.abstol = 1e-10;
    auto f = [](double u) { return 1.0 / std::log(u); };
    if (x >= 2.0) return integrate(f, 2.0, x, opt).value;
    return -integrate(f, x, 2.0, opt).value;
}

}    // namespace beurling
