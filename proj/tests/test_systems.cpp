#include "beurling/number_system.hpp"

#include "beurling/sieve.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace beurling;

TEST_SUITE_BEGIN("systems");

TEST_CASE("build_system: primes {2,3}, x_max 10") {
    const auto sys = build_system(PrimeList::simple({2.0, 3.0}), 10.0);
    const auto& t = sys.table();
    REQUIRE(t.size() == 7);
    const double want_vals[] = {1, 2, 3, 4, 6, 8, 9};
    const std::int64_t want_mu[] = {1, -1, -1, 0, 1, 0, 0};
    for (int i = 0; i < 7; ++i) {
        CHECK(t[i].value == want_vals[i]);
        CHECK(t[i].count == 1);
        CHECK(t[i].mu_sum == want_mu[i]);
    }
}

TEST_CASE("build_system: repeated prime value via multiplicity") {
    const auto sys = build_system(PrimeList({2.0}, {2}), 5.0);
    const auto& t = sys.table();
    REQUIRE(t.size() == 3);
    CHECK(t[0].value == 1.0);
    CHECK(t[0].count == 1);
    CHECK(t[0].mu_sum == 1);
    CHECK(t[1].value == 2.0);
    CHECK(t[1].count == 2);
    CHECK(t[1].mu_sum == -2);
    // {p1 p1}, {p1 p2}, {p2 p2}: mu contributions 0 + 1 + 0.
    CHECK(t[2].value == 4.0);
    CHECK(t[2].count == 3);
    CHECK(t[2].mu_sum == 1);
}

TEST_CASE("build_system: empty prime list and row budget") {
    const auto sys = build_system(PrimeList{}, 7.0);
    REQUIRE(sys.table().size() == 1);
    CHECK(sys.table()[0].value == 1.0);
    CHECK_THROWS_AS(build_system(PrimeList::simple({2.0}), 1e6, 5), budget_error);
}

TEST_CASE("rational system basics") {
    const auto sys = rational_system(10.5);
    CHECK(sys.N(10.5) == 10.0);
    CHECK(sys.pi(10.0) == 4.0);
    CHECK(testsup::weight_at(sys.mu_measure(), 6.0) == 1.0);
    CHECK(testsup::weight_at(sys.mu_measure(), 4.0) == 0.0);
    CHECK(counting(sys, CountKind::N, 10.5) == 10.0);
    CHECK(counting(sys, CountKind::pi, 2.5) == 1.0);
}

TEST_CASE("rational Pi includes prime powers with 1/m weights") {
    const auto sys = rational_system(100.0);
    CHECK(sys.Pi(9.0) == doctest::Approx(4.0 + 1.0 + 1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("build_system reproduces the sieve path on rational primes") {
    const double x_max = 10000.0;
    const auto fast = rational_system(x_max);
    std::vector<double> pv;
    for (auto p : sieve_primes(std::uint64_t(x_max))) pv.push_back(double(p));
    const auto slow = build_system(PrimeList::simple(std::move(pv)), x_max);
    REQUIRE(slow.table().size() == fast.table().size());
    for (std::size_t i = 0; i < fast.table().size(); ++i) {
        CHECK(slow.table()[i].value == fast.table()[i].value);
        CHECK(slow.table()[i].count == fast.table()[i].count);
        CHECK(slow.table()[i].mu_sum == fast.table()[i].mu_sum);
    }
}

TEST_CASE("rescaled system: theta = 1/2") {
    const auto ext = rescaled_system(0.5, 100.0);
    // N_theta(100) = sum_{n <= 10} n = 55; E(100) = 5 with |E| <= sqrt(x).
    CHECK(ext.dN.cumulative(100.0) == doctest::Approx(55.0));
    CHECK(std::abs(ext.dN.cumulative(100.0) - 0.5 * 100.0) <= std::sqrt(100.0));
    // dPi atom for p = 2, m = 1 sits at 4 with weight 2.
    CHECK(testsup::weight_at(ext.dPi, 4.0) == doctest::Approx(2.0));
    CHECK(counting(ext, CountKind::N, 100.0) == doctest::Approx(55.0));
    CHECK_THROWS_AS(counting(ext, CountKind::pi, 10.0), validation_error);
}

TEST_CASE("rescaled system satisfies mellin(dN) = exp(mellin(dPi))") {
    const auto ext = rescaled_system(0.5, 1e6);
    const double B = std::sqrt(ext.dN.x_max());    // largest base integer
    for (cplx s : {cplx(1.5, 0.0), cplx(2.0, 5.0), cplx(3.0, -2.0)}) {
        const cplx lhs = ext.dN.mellin(s);
        const cplx rhs = std::exp(ext.dPi.mellin(s));
        // Both sides miss their tails beyond x_max; for theta = 1/2 the dN
        // tail is sum_{n > B} n^{1-2 sigma} and the dPi tail is smaller.
        const double trunc =
            3.0 * (1.0 + std::abs(lhs)) * std::pow(B, 2.0 - 2.0 * s.real()) /
            (2.0 * s.real() - 2.0);
        CHECK(std::abs(lhs - rhs) < trunc + 1e-8 * (1.0 + std::abs(lhs)));
    }
}

TEST_CASE("chi cluster counts") {
    const auto sys = build_system(PrimeList::simple({2.0, 3.0}), 10.0);
    CHECK(sys.chi(4.0, 1.5) == 2);    // values 3 and 4
    for (const auto& row : sys.table()) CHECK(sys.chi(row.value, 0.0) == row.count);

    const auto rat = rational_system(50.0);
    for (double x : {5.0, 9.5, 20.3}) {
        for (double lam : {0.2, 1.0, 3.7}) {
            if (x - lam < 1.0) continue;
            const double expect = std::floor(x + lam) - std::ceil(x - lam) + 1.0;
            CHECK(double(rat.chi(x, lam)) == expect);
            // chi(x, lambda) = N(x+lambda) - N((x-lambda)^-)
            const double via_N =
                rat.N(x + lam) - rat.N(std::nextafter(x - lam, 0.0));
            CHECK(double(rat.chi(x, lam)) == via_N);
        }
    }
    // Monotone in lambda.
    CHECK(rat.chi(10.0, 0.5) <= rat.chi(10.0, 2.5));
}

TEST_CASE("counting monotonicity invariants") {
    const auto sys = build_system(PrimeList::simple({2.0, 3.0, 5.0}), 200.0);
    double prev = -1.0;
    for (double x = 0.0; x <= 200.0; x += 7.3) {
        const double n = sys.N(x);
        CHECK(n >= prev);
        prev = n;
        CHECK(sys.pi(x) <= n);
        CHECK(sys.Pi(x) >= sys.pi(x));
    }
}

TEST_CASE("fundamental identity: count * mu = delta_1") {
    // zeta_P * M = 1 at the coefficient level, exactly.
    const auto check = [](const NumberSystem& sys) {
        const auto prod = convolve(sys.count_measure(), sys.mu_measure(), sys.x_max());
        REQUIRE(prod.size() == 1);
        CHECK(prod.location(0) == 1.0);
        CHECK(prod.weight(0) == 1.0);
    };
    check(build_system(PrimeList::simple({2.0, 3.0}), 100.0));
    check(rational_system(10000.0));
    rng64 rng(12);
    check(build_system(PrimeList::simple(testsup::random_dyadic_primes(rng, 6)), 3000.0));
}

TEST_CASE("well-behaved report: rational, theta = 0") {
    const auto sys = rational_system(1e5);
    const auto rep = well_behaved_report(sys, 0.0);
    CHECK(rep.A_hat == 1.0);    // known density short-circuits the fit
    CHECK(rep.C_hat <= 1.1);
    const auto fit = well_behaved_report(sys.count_measure(), 0.0);    // forced fit
    CHECK(std::abs(fit.A_hat - 1.0) < 0.01);
    CHECK(rep.tail_mean == doctest::Approx(-0.5).epsilon(1e-3));
    CHECK(rep.C_prim < 1.0);    // |int (frac shift)| <= 1/8, times slack
}

TEST_CASE("well-behaved report: rescaled measure, theta = 1/2") {
    const auto ext = rescaled_system(0.5, 1e6);
    const auto rep = well_behaved_report(ext.dN, 0.5);
    CHECK(std::abs(rep.A_hat - 0.5) < 0.01);
    CHECK(rep.C_hat < 2.0);
}

TEST_CASE("well-behaved report flags a sparse system") {
    const auto sys = build_system(PrimeList::simple({2.0}), 1e5);
    const auto rep = well_behaved_report(sys, 0.0);
    CHECK(rep.A_hat < 0.01);    // N(x) = floor(log2 x) + 1 has no linear part
    CHECK(rep.C_hat > 5.0);
}

TEST_CASE("divisor measure") {
    const auto rat = rational_system(100.0);
    const auto d = divisor_measure(rat);
    CHECK(testsup::weight_at(d, 6.0) == 4.0);    // 1*6, 2*3, 3*2, 6*1
    CHECK(testsup::weight_at(d, 1.0) == 1.0);

    // Brute-force pair enumeration oracle on the {2,3} system.
    const auto sys = build_system(PrimeList::simple({2.0, 3.0}), 10.0);
    double pairs_leq_8 = 0;
    for (const auto& a : sys.table())
        for (const auto& b : sys.table())
            if (a.value * b.value <= 8.0) pairs_leq_8 += double(a.count * b.count);
    CHECK(divisor_measure(sys).cumulative(8.0) == doctest::Approx(pairs_leq_8));
    // d_2k via convolution powers: k = 1 must reproduce d.
    CHECK(measure_max_diff(divisor_power_measure(sys, 1), divisor_measure(sys)) == 0.0);
}

TEST_CASE("csv export and prime import") {
    const auto sys = build_system(PrimeList::simple({2.0, 3.0}), 10.0);
    std::stringstream ss;
    write_system_csv(ss, sys);
    std::string header;
    std::getline(ss, header);
    CHECK(header == "value,count,mu_sum");

    std::stringstream ps("value,multiplicity\n2,1\n2.5,2\n");
    const auto pl = read_primes_csv(ps);
    REQUIRE(pl.distinct() == 2);
    CHECK(pl.values[1] == 2.5);
    CHECK(pl.multiplicities[1] == 2);
    CHECK(pl.count_upto(2.6) == 3.0);
}

TEST_SUITE_END();
