#pragma once
// Rational-integer helpers: prime sieve, Mobius sieve, small factorizations.

#include <cstdint>
#include <vector>

namespace beurling {

// Primes <= limit.
std::vector<std::uint64_t> sieve_primes(std::uint64_t limit);

// mu[0] unused; mu[n] is the classical Mobius function for 1 <= n <= limit.
std::vector<std::int8_t> sieve_mobius(std::uint64_t limit);

// Classical mu(n) for a single small n (trial division).
int mobius(std::uint64_t n);

// Divisors of n in increasing order (trial division; n small).
std::vector<std::uint64_t> divisors(std::uint64_t n);

// Distinct prime factors of n.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}    // namespace beurling
