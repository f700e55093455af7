#include "beurling/sieve.hpp"

#include <algorithm>

namespace beurling {

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit) {
    std::vector<std::uint64_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> comp(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (!comp[i]) {
            primes.push_back(i);
            for (std::uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
        }
    }
    return primes;
}

// Linear sieve carrying mu alongside the smallest-prime-factor walk.
std::vector<std::int8_t> sieve_mobius(std::uint64_t limit) {
    std::vector<std::int8_t> mu(limit + 1, 0);
    if (limit == 0) return mu;
    mu[1] = 1;
    std::vector<std::uint32_t> primes;
    std::vector<bool> comp(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (!comp[i]) {
            primes.push_back(std::uint32_t(i));
            mu[i] = -1;
        }
        for (std::uint32_t p : primes) {
            std::uint64_t ip = i * std::uint64_t(p);
            if (ip > limit) break;
            comp[ip] = true;
            if (i % p == 0) {
                mu[ip] = 0;
                break;
            }
            mu[ip] = std::int8_t(-mu[i]);
        }
    }
    return mu;
}

int mobius(std::uint64_t n) {
    if (n == 0) return 0;
    int sign = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            sign = -sign;
        }
    }
    if (n > 1) sign = -sign;
    return sign;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> d;
    for (std::uint64_t i = 1; i * i <= n; ++i) {
        if (n % i == 0) {
            d.push_back(i);
            if (i != n / i) d.push_back(n / i);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> f;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            f.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) f.push_back(n);
    return f;
}

}    // namespace beurling
