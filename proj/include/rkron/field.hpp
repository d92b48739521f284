#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "rkron/intmath.hpp"

namespace rkron {

/// Element of F_{q^m}: coefficient vector of length m over F_q, low degree
/// first.  Raw storage; all arithmetic goes through FieldCtx.
struct FieldElem {
  boost::container::small_vector<uint64_t, 2> c;

  FieldElem() = default;
  explicit FieldElem(std::initializer_list<uint64_t> v) : c(v) {}

  unsigned width() const { return static_cast<unsigned>(c.size()); }
  bool operator==(const FieldElem& o) const { return c == o.c; }
  bool operator<(const FieldElem& o) const {
    return std::lexicographical_compare(c.begin(), c.end(), o.c.begin(), o.c.end());
  }
};

/// Description of F_{q^m} plus its arithmetic.  q is an odd or even prime
/// below 2^63 (residues live in uint64_t); m >= 2 requires a monic
/// irreducible modulus of degree m, stored as its m non-leading coefficients.
/// Instances are immutable after construction; derive variants through
/// with_primitive.
class FieldCtx {
 public:
  /// Prime field F_q.
  static FieldCtx prime_field(uint64_t q);

  /// Extension F_{q^m} with an explicit modulus (validated irreducible).
  static FieldCtx extension_field(uint64_t q, unsigned m, std::vector<uint64_t> modulus);

  /// Builds F_{q^m}, discovering a modulus (m >= 2) and a primitive element
  /// with the supplied rng.
  static FieldCtx make(uint64_t q, unsigned m, std::mt19937_64& rng);

  uint64_t q() const { return q_; }
  unsigned m() const { return m_; }
  const std::vector<uint64_t>& modulus() const { return modulus_; }
  const bigint& size() const { return size_; }    // q^m
  const bigint& order() const { return order_; }  // q^m - 1

  bool has_primitive() const { return primitive_.has_value(); }
  const FieldElem& primitive() const;

  /// Copy of this context carrying w as its primitive element.  Validates
  /// that w generates the full multiplicative group.
  FieldCtx with_primitive(FieldElem w) const;

  bool same_field(const FieldCtx& o) const {
    return q_ == o.q_ && m_ == o.m_ && modulus_ == o.modulus_;
  }

  FieldElem zero() const;
  FieldElem one() const;
  /// Embeds the residue v mod q as a constant.
  FieldElem from_residue(uint64_t v) const;
  FieldElem from_coeffs(std::vector<uint64_t> v) const;
  FieldElem random_element(std::mt19937_64& rng) const;
  FieldElem random_nonzero(std::mt19937_64& rng) const;

  bool is_zero(const FieldElem& a) const;
  bool is_one(const FieldElem& a) const;
  /// True when a is a constant (all extension coordinates zero).
  bool in_prime_field(const FieldElem& a) const;
  /// Width-1 image of a constant; throws interp_failure otherwise.
  FieldElem project_prime(const FieldElem& a) const;
  /// Width-m image of a width-1 element.
  FieldElem embed(const FieldElem& a) const;

  FieldElem add(const FieldElem& a, const FieldElem& b) const;
  FieldElem sub(const FieldElem& a, const FieldElem& b) const;
  FieldElem neg(const FieldElem& a) const;
  FieldElem mul(const FieldElem& a, const FieldElem& b) const;
  FieldElem inv(const FieldElem& a) const;
  FieldElem div(const FieldElem& a, const FieldElem& b) const;
  FieldElem pow(const FieldElem& a, uint64_t e) const;
  FieldElem pow(const FieldElem& a, const bigint& e) const;

 private:
  FieldCtx() = default;
  void check_elem(const FieldElem& a) const;
  void reduce_in_place(boost::container::small_vector<uint64_t, 4>& t) const;

  uint64_t q_ = 0;
  unsigned m_ = 1;
  std::vector<uint64_t> modulus_;  // size m_ when m_ >= 2, else empty
  bigint size_;
  bigint order_;
  std::optional<FieldElem> primitive_;
};

/// Random monic irreducible of degree m >= 2 over F_q, returned as its m
/// non-leading coefficients.  Expected O(m) trials.
std::vector<uint64_t> find_irreducible(uint64_t q, unsigned m, std::mt19937_64& rng);

/// Canonical irreducible of degree m over F_q: the first hit when coefficient
/// vectors are enumerated as base-q digit strings.  Deterministic, so files
/// naming only (q, m) pin down the same field everywhere.
std::vector<uint64_t> default_modulus(uint64_t q, unsigned m);

/// Random generator of the multiplicative group of ctx.  Factors the group
/// order internally; throws if factorization stalls.
FieldElem find_primitive(const FieldCtx& ctx, std::mt19937_64& rng);

}  // namespace rkron
