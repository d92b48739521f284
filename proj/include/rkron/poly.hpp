#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rkron/field.hpp"

namespace rkron {

struct MultiTerm {
  FieldElem coeff;
  std::vector<uint64_t> exps;  // one entry per variable

  bool operator==(const MultiTerm& o) const = default;
};

/// Sparse multivariate polynomial: terms with distinct exponent vectors in
/// lexicographic order, no zero coefficients.
class MultiPoly {
 public:
  explicit MultiPoly(unsigned nvars) : n_(nvars) {
    if (nvars == 0) throw invalid_input("polynomial needs at least one variable");
  }

  /// Canonicalizes: sorts, merges like exponents, drops zero coefficients.
  static MultiPoly from_terms(unsigned nvars, std::vector<MultiTerm> terms, const FieldCtx& F);

  unsigned nvars() const { return n_; }
  size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  uint64_t total_degree() const;  // 0 for the zero polynomial
  const std::vector<MultiTerm>& terms() const { return terms_; }

  bool operator==(const MultiPoly& o) const = default;

 private:
  unsigned n_;
  std::vector<MultiTerm> terms_;
};

struct UniTerm {
  FieldElem coeff;
  bigint exp;

  bool operator==(const UniTerm& o) const = default;
};

/// Sparse univariate polynomial with arbitrary-precision exponents, terms in
/// increasing exponent order, no zero coefficients.
class UniPoly {
 public:
  UniPoly() = default;

  static UniPoly from_terms(std::vector<UniTerm> terms, const FieldCtx& F);

  size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bigint degree() const { return terms_.empty() ? bigint(0) : terms_.back().exp; }
  const std::vector<UniTerm>& terms() const { return terms_; }

  bool operator==(const UniPoly& o) const = default;

 private:
  std::vector<UniTerm> terms_;
};

MultiPoly add(const MultiPoly& a, const MultiPoly& b, const FieldCtx& F);
MultiPoly sub(const MultiPoly& a, const MultiPoly& b, const FieldCtx& F);
UniPoly add(const UniPoly& a, const UniPoly& b, const FieldCtx& F);
UniPoly sub(const UniPoly& a, const UniPoly& b, const FieldCtx& F);

/// f(point), one field_pow per variable per term.
FieldElem eval_multi(const MultiPoly& f, std::span<const FieldElem> point, const FieldCtx& F);

FieldElem eval_uni(const UniPoly& h, const FieldElem& x, const FieldCtx& F);

/// Kronecker-style substitution x_k -> x^{s_k}: term exponents map to
/// sum_k e_k s_k, like images merged.
UniPoly kronecker_sub(const MultiPoly& f, std::span<const uint64_t> s, const FieldCtx& F);

/// Remainder mod x^p - 1: exponents reduced mod p, like images merged.
UniPoly mod_cyclic(const UniPoly& h, uint64_t p, const FieldCtx& F);

/// The n shifted substitutions of g under (s, p): result[k] is g with x_j ->
/// x^{s_j + [j==k] p}, computed in one pass over g's terms.
std::vector<UniPoly> poly_subs(const MultiPoly& g, std::span<const uint64_t> s, uint64_t p,
                               const FieldCtx& F);

/// Uniformly random polynomial with exactly t distinct monomials of total
/// degree <= D and nonzero coefficients.  Deterministic per seed; requires
/// t <= binomial(D + n, n).
MultiPoly random_poly(const FieldCtx& F, unsigned n, uint64_t t, uint64_t D, uint64_t seed);

/// Evaluation oracle with a query counter.  Single-threaded: concurrent
/// eval calls on one instance are not supported.
class BlackBox {
 public:
  using Fn = std::function<FieldElem(std::span<const FieldElem>, const FieldCtx&)>;

  BlackBox(unsigned arity, Fn fn) : arity_(arity), fn_(std::move(fn)) {
    if (arity == 0) throw invalid_input("black box needs at least one input");
  }

  FieldElem eval(std::span<const FieldElem> point, const FieldCtx& ctx) {
    if (point.size() != arity_) throw invalid_input("black box point has wrong arity");
    ++queries_;
    return fn_(point, ctx);
  }

  unsigned arity() const { return arity_; }
  uint64_t queries() const { return queries_; }

 private:
  unsigned arity_;
  Fn fn_;
  uint64_t queries_ = 0;
};

/// Oracle backed by a concrete polynomial over its home field.  The box also
/// answers queries over extensions of the home field (home coefficients are
/// embedded as constants), which is how degree-driven lifts evaluate it.
BlackBox make_poly_blackbox(MultiPoly f, FieldCtx home);

}  // namespace rkron
