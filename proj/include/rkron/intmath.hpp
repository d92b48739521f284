#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rkron {

using bigint = boost::multiprecision::cpp_int;

/// Base class for all errors raised by this library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Caller passed an argument that violates a documented precondition.
struct invalid_input : error {
  using error::error;
};

/// A solver detected that its term or degree bound does not hold, or produced
/// inconsistent intermediate data.  The multivariate driver treats this as a
/// per-round failure rather than a fatal condition.
struct interp_failure : error {
  using error::error;
};

inline uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t q) {
  return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % q);
}

uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t q);

/// Inverse of a modulo prime q; throws invalid_input on a == 0 (mod q).
uint64_t inv_mod(uint64_t a, uint64_t q);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(uint64_t n);

/// Exact for values fitting 64 bits, Miller-Rabin with 64 rounds beyond that
/// (error probability below 2^-128).
bool is_probable_prime(const bigint& n);

/// Distinct prime factors of n >= 1, ascending.  Trial division up to 10^6,
/// then Pollard rho; throws error if rho stalls (caller should supply the
/// derived data, e.g. a primitive element, explicitly).
std::vector<bigint> distinct_prime_factors(const bigint& n);

/// First `count` primes >= threshold, via a segmented sieve of Eratosthenes.
std::vector<uint64_t> primes_at_least(uint64_t threshold, uint64_t count);

/// Unbiased draw from [0, bound); bound >= 1.  Rejection sampling so the
/// result is portable across standard library implementations.
uint64_t uniform_below(std::mt19937_64& rng, uint64_t bound);

/// Unbiased draw from [0, bound), bound >= 1, for arbitrary-size bounds.
bigint uniform_below_big(std::mt19937_64& rng, const bigint& bound);

/// Smallest k with 2^k >= x, for x >= 1.
unsigned ceil_log2_u64(uint64_t x);

/// ceil(e * log2(d)) computed exactly (d >= 1), i.e. the smallest k with
/// 2^k >= d^e.
uint64_t ceil_log2_pow(uint64_t d, uint64_t e);

bigint binomial(uint64_t n, uint64_t k);

/// Cheap stateless mixer, used to derive independent sub-seeds.
uint64_t splitmix64(uint64_t x);

}  // namespace rkron
