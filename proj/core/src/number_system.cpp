#include "beurling/number_system.hpp"

#include "beurling/sieve.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <queue>
#include <string>

namespace beurling {

// ---------------------------------------------------------------------------
// PrimeList
// ---------------------------------------------------------------------------

PrimeList::PrimeList(std::vector<double> vals, std::vector<std::uint32_t> mults)
    : values(std::move(vals)), multiplicities(std::move(mults)) {
    if (values.size() != multiplicities.size())
        throw validation_error("PrimeList: values/multiplicities size mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 1.0)) throw validation_error("PrimeList: prime values must exceed 1");
        if (i > 0 && !(values[i] > values[i - 1]))
            throw validation_error("PrimeList: values must be strictly increasing");
        if (multiplicities[i] == 0) throw validation_error("PrimeList: multiplicity must be >= 1");
    }
}

PrimeList PrimeList::simple(std::vector<double> vals) {
    std::vector<std::uint32_t> mults(vals.size(), 1);
    return PrimeList(std::move(vals), std::move(mults));
}

double PrimeList::count_upto(double x) const {
    double total = 0.0;
    for (std::size_t i = 0; i < values.size() && values[i] <= x; ++i)
        total += multiplicities[i];
    return total;
}

// ---------------------------------------------------------------------------
// NumberSystem
// ---------------------------------------------------------------------------

namespace {

PointMeasure make_count_measure(const std::vector<SystemRow>& table, double x_max) {
    atom_list atoms;
    atoms.reserve(table.size());
    for (const auto& r : table) atoms.emplace_back(r.value, double(r.count));
    return PointMeasure(std::move(atoms), x_max);
}

PointMeasure make_mu_measure(const std::vector<SystemRow>& table, double x_max) {
    atom_list atoms;
    for (const auto& r : table)
        if (r.mu_sum != 0) atoms.emplace_back(r.value, double(r.mu_sum));
    return PointMeasure(std::move(atoms), x_max);
}

}    // namespace

NumberSystem::NumberSystem(PrimeList primes, double x_max, std::vector<SystemRow> table,
                           std::optional<double> theta_hint, std::optional<double> known_density)
    : primes_(std::move(primes)),
      x_max_(x_max),
      table_(std::move(table)),
      theta_hint_(theta_hint),
      known_density_(known_density),
      count_measure_(make_count_measure(table_, x_max)),
      mu_measure_(make_mu_measure(table_, x_max)) {
    if (table_.empty() || table_[0].value != 1.0 || table_[0].count != 1 || table_[0].mu_sum != 1)
        throw validation_error("NumberSystem: first table row must be (1, 1, 1)");
    values_.reserve(table_.size());
    count_prefix_.resize(table_.size() + 1);
    count_prefix_[0] = 0;
    for (std::size_t i = 0; i < table_.size(); ++i) {
        values_.push_back(table_[i].value);
        count_prefix_[i + 1] = count_prefix_[i] + table_[i].count;
    }
}

double NumberSystem::N(double x) const {
    if (x < 1.0) return 0.0;
    auto it = std::upper_bound(values_.begin(), values_.end(), x);
    return double(count_prefix_[std::size_t(it - values_.begin())]);
}

double NumberSystem::Pi(double x) const {
    if (x < primes_.smallest() || primes_.distinct() == 0) return 0.0;
    double total = 0.0;
    for (int m = 1;; ++m) {
        const double root = std::pow(x, 1.0 / double(m));
        if (root < primes_.smallest()) break;
        total += primes_.count_upto(root) / double(m);
        if (m > 1060) break;    // 2^1060 overflows double anyway
    }
    return total;
}

std::int64_t NumberSystem::chi(double x, double lambda) const {
    if (lambda < 0.0) throw validation_error("chi: lambda must be >= 0");
    auto lo = std::lower_bound(values_.begin(), values_.end(), x - lambda);
    auto hi = std::upper_bound(values_.begin(), values_.end(), x + lambda);
    return count_prefix_[std::size_t(hi - values_.begin())] -
           count_prefix_[std::size_t(lo - values_.begin())];
}

// ---------------------------------------------------------------------------
// build_system: priority-queue enumeration over non-decreasing index
// sequences.  A state is a multiset whose value v extends parent_v by the
// prime with index j.  Popping a state emits it and schedules
//   child  : multiset + {p_j}           (value v * p_j)
//   sibling: parent multiset + {p_j+1}  (value parent_v * p_j+1)
// which generates every non-decreasing sequence exactly once.
// ---------------------------------------------------------------------------

namespace {

struct EnumState {
    double v;
    double parent_v;
    std::uint32_t j;
    std::uint32_t k;    // multiset size
    bool rep;           // some index occurs twice
    bool parent_rep;
};

struct EnumOrder {
    bool operator()(const EnumState& a, const EnumState& b) const {
        // min-heap on value; remaining fields only break ties deterministically
        if (a.v != b.v) return a.v > b.v;
        if (a.j != b.j) return a.j > b.j;
        if (a.k != b.k) return a.k > b.k;
        return a.parent_v > b.parent_v;
    }
};

}    // namespace

NumberSystem build_system(const PrimeList& primes, double x_max, std::size_t row_budget) {
    if (!(x_max >= 1.0)) throw validation_error("build_system: x_max must be >= 1");

    // Index-distinguished prime copies.
    std::vector<double> p;
    for (std::size_t i = 0; i < primes.distinct(); ++i)
        for (std::uint32_t c = 0; c < primes.multiplicities[i]; ++c) p.push_back(primes.values[i]);

    std::vector<SystemRow> table;
    table.push_back({1.0, 1, 1});

    std::priority_queue<EnumState, std::vector<EnumState>, EnumOrder> heap;
    if (!p.empty() && p[0] <= x_max) heap.push({p[0], 1.0, 0, 1, false, false});

    while (!heap.empty()) {
        const EnumState s = heap.top();
        heap.pop();
        if (table.back().value == s.v) {
            table.back().count += 1;
            table.back().mu_sum += s.rep ? 0 : (s.k % 2 ? -1 : 1);
        } else {
            if (table.size() >= row_budget)
                throw budget_error("build_system: table exceeds row budget");
            table.push_back({s.v, 1, s.rep ? 0 : (s.k % 2 ? std::int64_t(-1) : 1)});
        }
        const double child_v = s.v * p[s.j];
        if (child_v <= x_max) heap.push({child_v, s.v, s.j, s.k + 1, true, s.rep});
        if (s.j + 1 < p.size()) {
            const double sib_v = s.parent_v * p[s.j + 1];
            if (sib_v <= x_max)
                heap.push({sib_v, s.parent_v, s.j + 1, s.k, s.parent_rep, s.parent_rep});
        }
    }
    return NumberSystem(primes, x_max, std::move(table));
}

NumberSystem rational_system(double x_max, std::size_t row_budget) {
    if (!(x_max >= 1.0)) throw validation_error("rational_system: x_max must be >= 1");
    const std::uint64_t n_max = std::uint64_t(x_max);
    if (n_max >= row_budget) throw budget_error("rational_system: table exceeds row budget");
    const auto mu = sieve_mobius(n_max);
    const auto ps = sieve_primes(n_max);
    std::vector<SystemRow> table;
    table.reserve(n_max);
    for (std::uint64_t n = 1; n <= n_max; ++n)
        table.push_back({double(n), 1, mu[n]});
    std::vector<double> pv(ps.begin(), ps.end());
    return NumberSystem(PrimeList::simple(std::move(pv)), x_max, std::move(table),
                        /*theta_hint=*/0.0, /*known_density=*/1.0);
}

ExtendedSystem rescaled_system(double theta, double x_max) {
    if (!(theta > 0.0 && theta < 1.0)) throw validation_error("rescaled_system: theta in (0,1)");
    if (!(x_max >= 1.0)) throw validation_error("rescaled_system: x_max must be >= 1");
    const double inv = 1.0 / (1.0 - theta);

    atom_list n_atoms;
    for (std::uint64_t n = 1;; ++n) {
        const double loc = std::pow(double(n), inv);
        if (loc > x_max) break;
        n_atoms.emplace_back(loc, std::pow(double(n), theta * inv));
    }

    atom_list pi_atoms;
    const double base_cap = std::pow(x_max, 1.0 - theta);
    for (std::uint64_t q : sieve_primes(std::uint64_t(base_cap) + 1)) {
        for (int m = 1;; ++m) {
            const double loc = std::pow(double(q), double(m) * inv);
            if (loc > x_max) break;
            pi_atoms.emplace_back(loc, std::pow(double(q), double(m) * theta * inv) / double(m));
        }
    }
    return ExtendedSystem{PointMeasure(std::move(n_atoms), x_max),
                          PointMeasure(std::move(pi_atoms), x_max), theta, 1.0 - theta};
}

double counting(const NumberSystem& sys, CountKind kind, double x) {
    if (x < 0.0) throw validation_error("counting: x must be >= 0");
    switch (kind) {
        case CountKind::N: return sys.N(x);
        case CountKind::pi: return sys.pi(x);
        case CountKind::Pi: return sys.Pi(x);
    }
    throw validation_error("counting: bad kind");
}

double counting(const ExtendedSystem& sys, CountKind kind, double x) {
    if (x < 0.0) throw validation_error("counting: x must be >= 0");
    switch (kind) {
        case CountKind::N: return sys.dN.cumulative(x);
        case CountKind::Pi: return sys.dPi.cumulative(x);
        case CountKind::pi:
            throw validation_error("counting: pi undefined for extended-sense systems");
    }
    throw validation_error("counting: bad kind");
}

// ---------------------------------------------------------------------------
// well_behaved_report
// ---------------------------------------------------------------------------

namespace {

// Exact integral of E(u) = N(u) - A u - shift over [a, b] (N is the
// right-continuous step function of dN).
double integrate_E(const PointMeasure& dN, double A, double shift, double a, double b) {
    kahan_sum acc;
    std::size_t i = dN.upper_index(a);
    double t = a;
    double level = dN.cumulative(a) - shift;
    while (t < b) {
        const double next = (i < dN.size() && dN.location(i) <= b) ? dN.location(i) : b;
        acc.add(level * (next - t) - 0.5 * A * (next * next - t * t));
        if (next < b && i < dN.size()) {
            level += dN.weight(i);
            ++i;
        }
        t = next;
    }
    return acc.value();
}

// sup over [a, b] of |Phi(u)| / u^{2 theta} with Phi(u) = int_a^u (E - shift).
// Phi is piecewise quadratic; checked at breakpoints and interior vertices.
double sup_prim_ratio(const PointMeasure& dN, double A, double shift, double a, double b,
                      double theta) {
    double best = 0.0;
    auto consider = [&](double u, double phi) {
        if (u <= 0) return;
        best = std::max(best, std::abs(phi) / std::pow(u, 2.0 * theta));
    };
    std::size_t i = dN.upper_index(a);
    double t = a;
    double level = dN.cumulative(a) - shift;
    double phi = 0.0;
    while (t < b) {
        const double next = (i < dN.size() && dN.location(i) <= b) ? dN.location(i) : b;
        // Phi'(u) = level - A u; vertex at u* = level / A.
        if (A != 0.0) {
            const double ustar = level / A;
            if (ustar > t && ustar < next) {
                const double phi_star =
                    phi + level * (ustar - t) - 0.5 * A * (ustar * ustar - t * t);
                consider(ustar, phi_star);
            }
        }
        phi += level * (next - t) - 0.5 * A * (next * next - t * t);
        consider(next, phi);
        if (next < b && i < dN.size()) {
            level += dN.weight(i);
            ++i;
        }
        t = next;
    }
    return best;
}

}    // namespace

WellBehavedReport well_behaved_report(const PointMeasure& dN, double theta,
                                      std::optional<double> A_known, std::size_t grid_size) {
    if (!(theta >= 0.0 && theta < 1.0))
        throw validation_error("well_behaved_report: theta in [0,1)");
    if (dN.is_empty()) throw validation_error("well_behaved_report: empty measure");

    WellBehavedReport rep;
    const double x_max = dN.x_max();
    const double x_lo = std::min(std::max(2.0, dN.location(0)), x_max);
    const auto grid = logspace(x_lo, x_max, std::max<std::size_t>(grid_size, 2));

    rep.samples.reserve(grid.size());
    for (double x : grid) rep.samples.emplace_back(x, dN.cumulative(x));

    if (A_known) {
        rep.A_hat = *A_known;
    } else {
        // Least squares through the origin.
        kahan_sum num, den;
        for (auto [x, nx] : rep.samples) {
            num.add(nx * x);
            den.add(x * x);
        }
        rep.A_hat = num.value() / den.value();
    }
    for (auto [x, nx] : rep.samples)
        rep.C_hat = std::max(rep.C_hat, std::abs(nx - rep.A_hat * x) / std::pow(x, theta));

    // Tail model over [x_max/4, x_max].
    const double ta = std::max(x_lo, x_max / 4.0), tb = x_max;
    if (tb > ta) {
        rep.tail_mean = integrate_E(dN, rep.A_hat, 0.0, ta, tb) / (tb - ta);
        const double mid = 0.5 * (ta + tb);
        const double m1 = integrate_E(dN, rep.A_hat, 0.0, ta, mid) / (mid - ta);
        const double m2 = integrate_E(dN, rep.A_hat, 0.0, mid, tb) / (tb - mid);
        rep.tail_mean_err = std::abs(m1 - m2) + 1e-13 * (1.0 + std::abs(rep.tail_mean));
        // Factor 2: re-anchoring the primitive from ta to x_max at most
        // doubles the bound; 1.25 is measurement slack.
        rep.C_prim = 2.5 * sup_prim_ratio(dN, rep.A_hat, rep.tail_mean, ta, tb, theta);
    }
    return rep;
}

WellBehavedReport well_behaved_report(const NumberSystem& sys, double theta,
                                      std::size_t grid_size) {
    return well_behaved_report(sys.count_measure(), theta, sys.known_density(), grid_size);
}

PointMeasure divisor_measure(const NumberSystem& sys) {
    return convolve(sys.count_measure(), sys.count_measure(), sys.x_max());
}

PointMeasure divisor_power_measure(const NumberSystem& sys, unsigned k) {
    return convolution_power(sys.count_measure(), 2 * k, sys.x_max());
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

void write_system_csv(std::ostream& os, const NumberSystem& sys) {
    os << "value,count,mu_sum\n";
    for (const auto& r : sys.table())
        os << fmt_double(r.value) << ',' << r.count << ',' << r.mu_sum << '\n';
}

PrimeList read_primes_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("value,multiplicity", 0) != 0)
        throw validation_error("prime CSV: missing 'value,multiplicity' header");
    std::vector<double> vals;
    std::vector<std::uint32_t> mults;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw validation_error("prime CSV: malformed row '" + line + "'");
        double v = 0;
        unsigned m = 0;
        auto r1 = std::from_chars(line.data(), line.data() + comma, v);
        auto r2 = std::from_chars(line.data() + comma + 1, line.data() + line.size(), m);
        if (r1.ec != std::errc() || r2.ec != std::errc())
            throw validation_error("prime CSV: malformed number in '" + line + "'");
        vals.push_back(v);
        mults.push_back(m);
    }
    return PrimeList(std::move(vals), std::move(mults));
}

}    // namespace beurling
