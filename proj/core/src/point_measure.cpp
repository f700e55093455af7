#include "beurling/point_measure.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <string>

namespace beurling {

namespace {
constexpr double dust_rel = 1e-15;
}

PointMeasure::PointMeasure(atom_list atoms, double x_max) : x_max_(x_max) {
    if (!(x_max >= 1.0)) throw validation_error("PointMeasure: x_max must be >= 1");
    std::erase_if(atoms, [x_max](const auto& a) { return a.first > x_max; });
    for (const auto& [loc, w] : atoms) {
        (void)w;
        if (!(loc >= 1.0)) throw validation_error("PointMeasure: locations must be >= 1");
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    locs_.reserve(atoms.size());
    weights_.reserve(atoms.size());
    double run_max = 0.0;
    std::size_t i = 0;
    while (i < atoms.size()) {
        const double loc = atoms[i].first;
        kahan_sum w;
        while (i < atoms.size() && atoms[i].first == loc) {
            w.add(atoms[i].second);
            ++i;
        }
        const double wv = w.value();
        run_max = std::max(run_max, std::abs(wv));
        if (wv != 0.0 && std::abs(wv) >= dust_rel * run_max) {
            locs_.push_back(loc);
            weights_.push_back(wv);
        }
    }
    finalize();
}

void PointMeasure::finalize() {
    log_locs_.resize(locs_.size());
    prefix_.resize(locs_.size() + 1);
    prefix_[0] = 0.0;
    kahan_sum acc;
    for (std::size_t i = 0; i < locs_.size(); ++i) {
        log_locs_[i] = std::log(locs_[i]);
        acc.add(weights_[i]);
        prefix_[i + 1] = acc.value();
    }
}

PointMeasure PointMeasure::dirac(double y, double weight, double x_max) {
    if (x_max <= 0.0) x_max = y;
    return PointMeasure(atom_list{{y, weight}}, x_max);
}

std::size_t PointMeasure::upper_index(double x) const {
    return std::size_t(std::upper_bound(locs_.begin(), locs_.end(), x) - locs_.begin());
}

double PointMeasure::cumulative(double x) const {
    if (x < 1.0) return 0.0;
    return prefix_[upper_index(x)];
}

cplx PointMeasure::mellin(cplx s) const {
    return parallel_csum(size(), 8192, [&](std::size_t b, std::size_t e) {
        kahan_csum acc;
        for (std::size_t i = b; i < e; ++i)
            acc.add(weights_[i] * std::exp(-s * log_locs_[i]));
        return acc.value();
    });
}

PointMeasure PointMeasure::scaled(double c) const {
    atom_list a;
    a.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) a.emplace_back(locs_[i], c * weights_[i]);
    return PointMeasure(std::move(a), x_max_);
}

PointMeasure PointMeasure::restricted(double new_x_max) const {
    atom_list a;
    for (std::size_t i = 0; i < size() && locs_[i] <= new_x_max; ++i)
        a.emplace_back(locs_[i], weights_[i]);
    return PointMeasure(std::move(a), new_x_max);
}

PointMeasure operator+(const PointMeasure& a, const PointMeasure& b) {
    atom_list merged;
    merged.reserve(a.size() + b.size());
    for (std::size_t i = 0; i < a.size(); ++i) merged.emplace_back(a.location(i), a.weight(i));
    for (std::size_t i = 0; i < b.size(); ++i) merged.emplace_back(b.location(i), b.weight(i));
    return PointMeasure(std::move(merged), std::max(a.x_max(), b.x_max()));
}

PointMeasure convolve(const PointMeasure& f, const PointMeasure& g, double x_max) {
    if (!(x_max >= 1.0)) throw validation_error("convolve: x_max must be >= 1");
    atom_list products;
    // f locations ascend, so the admissible g range shrinks monotonically.
    std::size_t g_hi = g.size();
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double u = f.location(i);
        if (u > x_max) break;
        const double limit = x_max / u;
        while (g_hi > 0 && g.location(g_hi - 1) > limit) --g_hi;
        // Guard against u*v landing just above x_max despite v <= x_max/u.
        for (std::size_t j = 0; j < g_hi; ++j) {
            const double p = u * g.location(j);
            if (p <= x_max) products.emplace_back(p, f.weight(i) * g.weight(j));
        }
    }
    return PointMeasure(std::move(products), x_max);
}

PointMeasure exp_star(const PointMeasure& pi, double x_max) {
    if (!pi.is_empty() && pi.location(0) <= 1.0 + 1e-12)
        throw validation_error("exp_star: atom at location 1 makes the series non-terminating");
    PointMeasure result = PointMeasure::dirac(1.0, 1.0, x_max);
    PointMeasure term = result;
    for (unsigned m = 1;; ++m) {
        if (m > 100000) throw nonconvergence_error("exp_star: series did not terminate");
        term = convolve(term, pi, x_max).scaled(1.0 / double(m));
        if (term.is_empty()) break;
        result = result + term;
    }
    return result;
}

PointMeasure conv_inverse(const PointMeasure& n, double x_max) {
    if (n.is_empty() || n.location(0) != 1.0)
        throw validation_error("conv_inverse: measure must have an atom at location 1");
    const double w1 = n.weight(0);
    if (std::abs(w1) < 1e-300)
        throw validation_error("conv_inverse: weight at location 1 is numerically zero");

    // Standard power-series division, processed in increasing location order.
    // rem holds delta_1 - (partial inverse) * n restricted to [1, x_max].
    std::map<double, double> rem;
    rem.emplace(1.0, 1.0);
    atom_list inv;
    double run_max = 0.0;
    constexpr std::size_t atom_budget = 20'000'000;
    while (!rem.empty()) {
        const auto [loc, w] = *rem.begin();
        rem.erase(rem.begin());
        const double c = w / w1;
        run_max = std::max(run_max, std::abs(c));
        if (std::abs(c) < dust_rel * run_max) continue;
        inv.emplace_back(loc, c);
        if (inv.size() > atom_budget)
            throw budget_error("conv_inverse: inverse support exceeds atom budget");
        // Subtract c * (delta_loc * n); the location-1 atom of n cancels the
        // entry just removed.
        for (std::size_t j = 1; j < n.size(); ++j) {
            const double p = loc * n.location(j);
            if (p > x_max) break;
            rem[p] -= c * n.weight(j);
        }
    }
    return PointMeasure(std::move(inv), x_max);
}

PointMeasure convolution_power(const PointMeasure& f, unsigned m, double x_max) {
    PointMeasure acc = PointMeasure::dirac(1.0, 1.0, x_max);
    for (unsigned i = 0; i < m; ++i) acc = convolve(acc, f, x_max);
    return acc;
}

double measure_max_diff(const PointMeasure& a, const PointMeasure& b) {
    double worst = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j >= b.size() || (i < a.size() && a.location(i) < b.location(j))) {
            worst = std::max(worst, std::abs(a.weight(i)));
            ++i;
        } else if (i >= a.size() || b.location(j) < a.location(i)) {
            worst = std::max(worst, std::abs(b.weight(j)));
            ++j;
        } else {
            worst = std::max(worst, std::abs(a.weight(i) - b.weight(j)));
            ++i;
            ++j;
        }
    }
    return worst;
}

void write_measure_csv(std::ostream& os, const PointMeasure& m) {
    os << "location,weight\n";
    for (std::size_t i = 0; i < m.size(); ++i)
        os << fmt_double(m.location(i)) << ',' << fmt_double(m.weight(i)) << '\n';
}

PointMeasure read_measure_csv(std::istream& is, double x_max) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("location,weight", 0) != 0)
        throw validation_error("measure CSV: missing 'location,weight' header");
    atom_list atoms;
    double max_loc = 1.0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw validation_error("measure CSV: malformed row '" + line + "'");
        double loc = 0, w = 0;
        auto r1 = std::from_chars(line.data(), line.data() + comma, loc);
        auto r2 = std::from_chars(line.data() + comma + 1, line.data() + line.size(), w);
        if (r1.ec != std::errc() || r2.ec != std::errc())
            throw validation_error("measure CSV: malformed number in '" + line + "'");
        atoms.emplace_back(loc, w);
        max_loc = std::max(max_loc, loc);
    }
    return PointMeasure(std::move(atoms), x_max > 0 ? x_max : max_loc);
}

}    // namespace beurling
