#include "rkron/intmath.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <boost/multiprecision/miller_rabin.hpp>

namespace rkron {

uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t q) {
  uint64_t r = 1 % q;
  a %= q;
  while (e) {
    if (e & 1) r = mul_mod(r, a, q);
    a = mul_mod(a, a, q);
    e >>= 1;
  }
  return r;
}

uint64_t inv_mod(uint64_t a, uint64_t q) {
  a %= q;
  if (a == 0) throw invalid_input("inv_mod: division by zero");
  // Extended Euclid; q < 2^63 keeps the signed arithmetic in range.
  int64_t t = 0, nt = 1;
  int64_t r = static_cast<int64_t>(q), nr = static_cast<int64_t>(a);
  while (nr != 0) {
    int64_t quot = r / nr;
    std::swap(t -= quot * nt, nt);
    std::swap(r -= quot * nr, nr);
  }
  if (t < 0) t += static_cast<int64_t>(q);
  return static_cast<uint64_t>(t);
}

namespace {

bool miller_rabin_u64(uint64_t n, uint64_t a) {
  uint64_t d = n - 1;
  int s = std::countr_zero(d);
  d >>= s;
  uint64_t x = pow_mod(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % p == 0) return n == p;
  }
  // This witness set is exact for all n < 3.3 * 10^24.
  for (uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (!miller_rabin_u64(n, a)) return false;
  }
  return true;
}

bool is_probable_prime(const bigint& n) {
  if (n < 0) return false;
  if (n <= std::numeric_limits<uint64_t>::max()) {
    return is_prime_u64(static_cast<uint64_t>(n));
  }
  std::mt19937_64 gen(0x9e3779b97f4a7c15ULL);
  return boost::multiprecision::miller_rabin_test(n, 64, gen);
}

namespace {

bigint pollard_rho(const bigint& n, std::mt19937_64& rng) {
  // Brent's cycle finding; returns a nontrivial factor or throws.
  for (int attempt = 0; attempt < 64; ++attempt) {
    bigint c = uniform_below_big(rng, n - 1) + 1;
    bigint x = uniform_below_big(rng, n);
    bigint y = x, d = 1;
    uint64_t limit = 1ULL << 24;
    for (uint64_t steps = 0; d == 1 && steps < limit; ++steps) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      d = boost::multiprecision::gcd(x >= y ? x - y : y - x, n);
    }
    if (d != 1 && d != n) return d;
  }
  throw error("factorization stalled; supply the derived quantity explicitly");
}

void factor_into(const bigint& n, std::vector<bigint>& out, std::mt19937_64& rng) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out.push_back(n);
    return;
  }
  bigint d = pollard_rho(n, rng);
  factor_into(d, out, rng);
  factor_into(n / d, out, rng);
}

}  // namespace

std::vector<bigint> distinct_prime_factors(const bigint& n) {
  if (n < 1) throw invalid_input("distinct_prime_factors: n must be >= 1");
  std::vector<bigint> out;
  bigint rest = n;
  for (uint64_t p = 2; p <= 1000000 && bigint(p) * p <= rest; p == 2 ? p = 3 : p += 2) {
    if (rest % p == 0) {
      out.push_back(p);
      while (rest % p == 0) rest /= p;
    }
  }
  if (rest > 1) {
    std::mt19937_64 rng(0x2545f4914f6cdd1dULL);
    std::vector<bigint> large;
    factor_into(rest, large, rng);
    std::sort(large.begin(), large.end());
    large.erase(std::unique(large.begin(), large.end()), large.end());
    out.insert(out.end(), large.begin(), large.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<uint64_t> primes_at_least(uint64_t threshold, uint64_t count) {
  if (count == 0) return {};
  std::vector<uint64_t> primes;
  primes.reserve(count);
  uint64_t low = std::max<uint64_t>(threshold, 2);
  constexpr uint64_t kSegment = 1 << 20;
  // Base primes for marking, grown as segments move up.
  std::vector<uint64_t> base;
  uint64_t base_limit = 1;
  std::vector<char> mark;
  while (primes.size() < count) {
    uint64_t high = low + kSegment;  // [low, high)
    uint64_t need = static_cast<uint64_t>(std::sqrt(static_cast<double>(high))) + 2;
    if (need > base_limit) {
      // Simple sieve up to `need` rebuilt from scratch; cheap at these sizes.
      base.clear();
      std::vector<char> small(need + 1, 1);
      for (uint64_t i = 2; i <= need; ++i) {
        if (!small[i]) continue;
        base.push_back(i);
        for (uint64_t j = i * i; j <= need; j += i) small[j] = 0;
      }
      base_limit = need;
    }
    mark.assign(kSegment, 1);
    for (uint64_t p : base) {
      uint64_t first = std::max(p * p, (low + p - 1) / p * p);
      if (first >= high) continue;
      for (uint64_t j = first; j < high; j += p) mark[j - low] = 0;
    }
    for (uint64_t v = low; v < high && primes.size() < count; ++v) {
      if (v >= 2 && mark[v - low]) primes.push_back(v);
    }
    low = high;
  }
  return primes;
}

uint64_t uniform_below(std::mt19937_64& rng, uint64_t bound) {
  if (bound == 0) throw invalid_input("uniform_below: bound must be positive");
  if ((bound & (bound - 1)) == 0) return rng() & (bound - 1);
  uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    uint64_t v = rng();
    if (v < limit) return v % bound;
  }
}

bigint uniform_below_big(std::mt19937_64& rng, const bigint& bound) {
  if (bound <= 0) throw invalid_input("uniform_below_big: bound must be positive");
  if (bound <= std::numeric_limits<uint64_t>::max()) {
    return uniform_below(rng, static_cast<uint64_t>(bound));
  }
  const unsigned bits = boost::multiprecision::msb(bound) + 1;
  const unsigned words = (bits + 63) / 64;
  for (;;) {
    bigint v = 0;
    for (unsigned i = 0; i < words; ++i) v = (v << 64) | rng();
    v >>= words * 64 - bits;
    if (v < bound) return v;
  }
}

unsigned ceil_log2_u64(uint64_t x) {
  if (x == 0) throw invalid_input("ceil_log2_u64: x must be >= 1");
  return x == 1 ? 0 : std::bit_width(x - 1);
}

uint64_t ceil_log2_pow(uint64_t d, uint64_t e) {
  if (d == 0) throw invalid_input("ceil_log2_pow: d must be >= 1");
  if (d == 1 || e == 0) return 0;
  bigint v = boost::multiprecision::pow(bigint(d), static_cast<unsigned>(e));
  uint64_t k = boost::multiprecision::msb(v);  // floor(log2 v)
  if ((v & (v - 1)) != 0) ++k;
  return k;
}

bigint binomial(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  bigint r = 1;
  for (uint64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace rkron
