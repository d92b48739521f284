#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <span>

#include "rkron/poly.hpp"

namespace rkron {

/// Smallest m with q^m >= degree_bound + 2, so that the powers
/// omega^0 .. omega^degree_bound are pairwise distinct with room to spare.
unsigned choose_extension(uint64_t q, uint64_t degree_bound);

/// Minimal connection polynomial of the sequence a, returned monic and dense
/// (low degree first).  The zero sequence yields the constant 1.
std::vector<FieldElem> berlekamp_massey(std::span<const FieldElem> a, const FieldCtx& F);

/// All roots (in ctx) of a monic squarefree polynomial that splits over ctx,
/// by randomized equal-degree splitting.  Result order is unspecified; the
/// root set itself is deterministic.
std::vector<FieldElem> find_roots(std::span<const FieldElem> zeta, const FieldCtx& F);

/// Discrete log of v to base omega among exponents 0..bound, by baby-step
/// giant-step.  Throws interp_failure when no exponent in range works (a
/// spurious root upstream).
uint64_t bsgs_dlog(const FieldElem& v, const FieldElem& omega, uint64_t bound, const FieldCtx& F);

/// Solves sum_j c_j v_j^i = a_i for i = 0..t-1 given t distinct nodes v,
/// in O(t^2) via the Lagrange basis of the master polynomial.
std::vector<FieldElem> solve_transposed_vandermonde(std::span<const FieldElem> v,
                                                    std::span<const FieldElem> a,
                                                    const FieldCtx& F);

/// Sparse interpolation of the univariate polynomial behind `oracle` with at
/// most `term_bound` terms and degree at most `degree_bound`, over a context
/// whose size is at least degree_bound + 2 and which carries a primitive
/// element.  Queries the oracle exactly 2*term_bound times.  Exponents are
/// recovered by scanning omega^0..omega^degree_bound for roots of the
/// connection polynomial.  When ctx extends a prime field and
/// project_coeffs_to_prime is set, coefficients are checked to be constants
/// and narrowed; a non-constant coefficient raises interp_failure.
UniPoly bot_exhaustive(BlackBox& oracle, uint64_t term_bound, uint64_t degree_bound,
                       const FieldCtx& ctx, bool project_coeffs_to_prime = true);

/// Same contract as bot_exhaustive, but exponents come from factoring the
/// connection polynomial and taking discrete logs of its roots, so the cost
/// scales with sqrt(degree_bound) instead of degree_bound.
UniPoly bot_dlog(BlackBox& oracle, uint64_t term_bound, uint64_t degree_bound,
                 const FieldCtx& ctx, bool project_coeffs_to_prime = true);

/// Univariate solver strategy handed to the multivariate reduction: picks a
/// back-end and, when the base field is too small for a requested degree
/// bound, transparently lifts evaluation into a cached extension field.
/// Interpolation results always carry base-field coefficients.
class UnivariateInterpolator {
 public:
  enum class Backend { exhaustive, dlog };

  explicit UnivariateInterpolator(Backend backend, uint64_t ext_seed = 1)
      : backend_(backend), ext_rng_(splitmix64(ext_seed)) {}

  Backend backend() const { return backend_; }

  /// Interpolates through a univariate oracle over `base` (or a lift of it).
  /// The returned polynomial has at most term_bound terms and degree at most
  /// degree_bound, else interp_failure is thrown.
  UniPoly interpolate(BlackBox& oracle, uint64_t term_bound, const bigint& degree_bound,
                      const FieldCtx& base);

 private:
  const FieldCtx& eval_context(const bigint& degree_bound, const FieldCtx& base);

  Backend backend_;
  std::mt19937_64 ext_rng_;
  std::map<unsigned, FieldCtx> lifts_;  // extension degree -> cached context
};

}  // namespace rkron
