#include <doctest.h>

#include "rkron/intmath.hpp"

using namespace rkron;

TEST_CASE("modular primitives on frozen values") {
  CHECK(pow_mod(3, 6, 7) == 1);
  CHECK(pow_mod(3, 2, 7) == 2);
  CHECK(pow_mod(2, 0, 5) == 1);
  CHECK(inv_mod(3, 7) == 5);
  CHECK(inv_mod(1, 2) == 1);
  CHECK_THROWS_AS(inv_mod(0, 7), invalid_input);
  CHECK_THROWS_AS(inv_mod(14, 7), invalid_input);

  // Near the modulus: a = q-2, b = q-3, so the product is (-2)(-3) = 6.
  uint64_t q = 30000000001ULL;
  CHECK(mul_mod(q - 2, q - 3, q) == 6);
  CHECK(pow_mod(q - 1, 2, q) == 1);
  CHECK(mul_mod(inv_mod(123456789, q), 123456789, q) == 1);
}

TEST_CASE("primality") {
  for (uint64_t p : {2ULL, 3ULL, 5ULL, 101ULL, 30000000001ULL, 2305843009213693951ULL}) {
    CHECK(is_prime_u64(p));
  }
  for (uint64_t c : {0ULL, 1ULL, 4ULL, 561ULL, 1000036000099ULL}) {
    CHECK_FALSE(is_prime_u64(c));
  }
  CHECK(is_probable_prime(bigint("30000000001")));
  // 2^89 - 1 is a Mersenne prime; its successor is even.
  bigint m89 = (bigint(1) << 89) - 1;
  CHECK(is_probable_prime(m89));
  CHECK_FALSE(is_probable_prime(m89 + 1));
}

TEST_CASE("distinct prime factors") {
  CHECK(distinct_prime_factors(1).empty());
  CHECK(distinct_prime_factors(12) == std::vector<bigint>({2, 3}));
  CHECK(distinct_prime_factors(30000000000ULL) == std::vector<bigint>({2, 3, 5}));
  CHECK(distinct_prime_factors(101 * 101) == std::vector<bigint>({101}));
  CHECK(distinct_prime_factors(10200) == std::vector<bigint>({2, 3, 5, 17}));
  // Semiprime beyond the trial-division range exercises the rho stage.
  CHECK(distinct_prime_factors(bigint(30000000001ULL) * 2305843009213693951ULL) ==
        std::vector<bigint>({30000000001ULL, 2305843009213693951ULL}));
}

TEST_CASE("prime streams") {
  CHECK(primes_at_least(2, 5) == std::vector<uint64_t>({2, 3, 5, 7, 11}));
  CHECK(primes_at_least(0, 1) == std::vector<uint64_t>({2}));
  CHECK(primes_at_least(14, 1) == std::vector<uint64_t>({17}));
  CHECK(primes_at_least(32, 3) == std::vector<uint64_t>({37, 41, 43}));

  // Cross-check a larger run against naive trial division.
  std::vector<uint64_t> got = primes_at_least(224, 100);
  std::vector<uint64_t> naive;
  for (uint64_t x = 224; naive.size() < 100; ++x) {
    bool prime = x >= 2;
    for (uint64_t d = 2; d * d <= x; ++d) {
      if (x % d == 0) {
        prime = false;
        break;
      }
    }
    if (prime) naive.push_back(x);
  }
  CHECK(got == naive);
}

TEST_CASE("logarithm ceilings") {
  CHECK(ceil_log2_u64(1) == 0);
  CHECK(ceil_log2_u64(2) == 1);
  CHECK(ceil_log2_u64(3) == 2);
  CHECK(ceil_log2_u64(4) == 2);
  CHECK(ceil_log2_u64(5) == 3);
  CHECK(ceil_log2_u64(1024) == 10);
  CHECK(ceil_log2_u64(1025) == 11);

  CHECK(ceil_log2_pow(16, 3) == 12);
  CHECK(ceil_log2_pow(10, 2) == 7);   // 2^7 = 128 >= 100
  CHECK(ceil_log2_pow(3, 4) == 7);    // 2^7 = 128 >= 81
  CHECK(ceil_log2_pow(1, 5) == 0);
  CHECK(ceil_log2_pow(7, 0) == 0);
  CHECK(ceil_log2_pow(2, 40) == 40);  // exact powers of two stay exact
}

TEST_CASE("binomial") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(10, 10) == 1);
  CHECK(binomial(52, 5) == 2598960);
  CHECK(binomial(3, 7) == 0);
}

TEST_CASE("uniform draws") {
  std::mt19937_64 a(42), b(42);
  for (int i = 0; i < 50; ++i) CHECK(uniform_below(a, 1000) == uniform_below(b, 1000));

  std::mt19937_64 rng(7);
  std::vector<bool> seen(10, false);
  for (int i = 0; i < 1000; ++i) {
    uint64_t v = uniform_below(rng, 10);
    REQUIRE(v < 10);
    seen[v] = true;
  }
  for (bool s : seen) CHECK(s);
  CHECK(uniform_below(rng, 1) == 0);

  bigint bound = bigint(1) << 100;
  bigint v = uniform_below_big(rng, bound);
  CHECK(v >= 0);
  CHECK(v < bound);
  std::mt19937_64 c(9), d(9);
  CHECK(uniform_below_big(c, bound) == uniform_below_big(d, bound));
}

TEST_CASE("splitmix64 matches the reference sequence") {
  CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
  CHECK(splitmix64(1) == 0x910A2DEC89025CC1ULL);
}
