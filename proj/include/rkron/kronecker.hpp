#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>

#include "rkron/unibot.hpp"

namespace rkron {

/// One randomized Kronecker substitution: x_k -> x^{s_k} with exponent
/// arithmetic taken mod p.
struct SubstitutionPair {
  uint64_t p = 0;
  std::vector<uint64_t> s;

  bool operator==(const SubstitutionPair& o) const = default;
};

/// Parameters steering one halving round of the reduction.  T and D bound the
/// target polynomial globally; T1 bounds the residual still missing, and the
/// derived quantities follow it.
struct ReductionConfig {
  uint64_t T = 0;   // global term bound
  uint64_t D = 0;   // global total-degree bound
  double mu = 0;    // overall failure tolerance
  double nu = 0;    // per-round failure tolerance, mu / (ceil(log2 T) + 1)
  uint64_t T1 = 0;  // residual term bound for the current round

  static ReductionConfig make(uint64_t T, uint64_t D, double mu);

  /// Substitutions drawn this round: ceil(32 ln(T1 / nu)).
  uint64_t substitution_count() const;

  /// Pool size for (T1, D): max(31 * ceil((T1-1) log2 D), 1).
  uint64_t pool_size() const;

  void halve() { T1 /= 2; }
};

/// The first pool_size primes at or above 32 (T1 - 1), smallest first.
std::vector<uint64_t> prime_pool(uint64_t T1, uint64_t D);

/// l independent draws (p uniform over the pool, each s_k uniform over Z_p)
/// with exact duplicates removed, first occurrence kept.
std::vector<SubstitutionPair> sample_substitutions(std::span<const uint64_t> pool, unsigned n,
                                                   uint64_t l, std::mt19937_64& rng);

/// Unary oracle computing theta -> inner(theta^{s_1}, ..., theta^{s_n}).
/// Each query costs exactly one query of `inner`, which must outlive the
/// returned box.
BlackBox make_univariate_oracle(BlackBox& inner, std::vector<uint64_t> s);

/// Number of terms of f whose substituted exponent sum_k e_k s_k mod p is
/// shared with another term.
uint64_t collision_count(const MultiPoly& f, uint64_t p, std::span<const uint64_t> s);

/// Multivariate terms reconstructible from one substitution: for each term of
/// f_mod, its residue class must single out matching terms of equal
/// coefficient in f_s and in each shifted image g[k]; the shift offsets must
/// be divisible by p with quotients that rebuild the matched exponent and
/// keep total degree within D.  Terms failing any check are skipped.
MultiPoly ts_terms(const UniPoly& f_mod, const UniPoly& f_s, std::span<const UniPoly> g,
                   uint64_t p, std::span<const uint64_t> s, uint64_t D, const FieldCtx& F);

/// Per-round diagnostics, mainly for query accounting.
struct RoundStats {
  uint64_t T1 = 0;
  uint64_t drawn = 0;           // substitutions sampled (before dedup)
  uint64_t distinct_pairs = 0;  // jobs in the selection step
  uint64_t shifted_jobs = 0;    // jobs in the recovery step (n on success)
  uint64_t term_bound_each = 0; // per-job term bound (queries are 2x this)
  uint64_t selected_prime = 0;
  uint64_t best_residual_terms = 0;
  bool failed = false;
};

/// One halving round: recovers at least half the terms of f - f_star with
/// probability 1 - nu, returning the partial polynomial, or nullopt when the
/// round detects failure (best residual image larger than T1, or an
/// interpolation bound breaks).
std::optional<MultiPoly> half_poly(BlackBox& bf, const MultiPoly& f_star, uint64_t T,
                                   uint64_t T1, uint64_t D, double nu,
                                   UnivariateInterpolator& interp, std::mt19937_64& rng,
                                   const FieldCtx& F, RoundStats* stats = nullptr);

struct DriverStats {
  std::vector<RoundStats> rounds;
  uint64_t oracle_queries = 0;
};

/// Full sparse interpolation driver: halves the residual term bound each
/// round, accumulating recovered terms, with overall failure probability at
/// most mu.  Returns nullopt on (detected) failure.
std::optional<MultiPoly> mul_poly_si(BlackBox& bf, uint64_t T, uint64_t D, double mu,
                                     UnivariateInterpolator& interp, std::mt19937_64& rng,
                                     const FieldCtx& F, DriverStats* stats = nullptr);

}  // namespace rkron
