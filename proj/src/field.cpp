#include "rkron/field.hpp"

#include <algorithm>

namespace rkron {

namespace {

inline uint64_t add_mod(uint64_t a, uint64_t b, uint64_t q) {
  uint64_t r = a + b;  // q < 2^63, no overflow
  return r >= q ? r - q : r;
}

inline uint64_t sub_mod(uint64_t a, uint64_t b, uint64_t q) {
  return a >= b ? a - b : a + (q - b);
}

// Dense univariate polynomials over F_q, low degree first.  Only used for
// modulus discovery and validation, so clarity over speed.
using Dense = std::vector<uint64_t>;

void dense_trim(Dense& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod b (b nonzero), destructive on a.
void dense_rem(Dense& a, const Dense& b, uint64_t q) {
  uint64_t lead_inv = inv_mod(b.back(), q);
  while (a.size() >= b.size()) {
    uint64_t c = mul_mod(a.back(), lead_inv, q);
    size_t shift = a.size() - b.size();
    if (c != 0) {
      for (size_t j = 0; j < b.size(); ++j) {
        a[shift + j] = sub_mod(a[shift + j], mul_mod(c, b[j], q), q);
      }
    }
    a.pop_back();
    dense_trim(a);
    if (a.empty()) return;
  }
}

Dense dense_gcd(Dense a, Dense b, uint64_t q) {
  dense_trim(a);
  dense_trim(b);
  while (!b.empty()) {
    dense_rem(a, b, q);
    std::swap(a, b);
  }
  if (!a.empty() && a.back() != 1) {
    uint64_t s = inv_mod(a.back(), q);
    for (auto& v : a) v = mul_mod(v, s, q);
  }
  return a;
}

Dense dense_mul_mod(const Dense& a, const Dense& b, const Dense& f, uint64_t q) {
  if (a.empty() || b.empty()) return {};
  Dense t(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      t[i + j] = add_mod(t[i + j], mul_mod(a[i], b[j], q), q);
    }
  }
  dense_rem(t, f, q);
  return t;
}

Dense dense_pow_mod(Dense base, uint64_t e, const Dense& f, uint64_t q) {
  Dense r{1 % q};
  dense_trim(r);
  dense_rem(base, f, q);
  while (e) {
    if (e & 1) r = dense_mul_mod(r, base, f, q);
    base = dense_mul_mod(base, base, f, q);
    e >>= 1;
  }
  return r;
}

// full: complete coefficient vector of a monic polynomial of degree >= 2.
// Irreducible iff no factor of degree <= deg/2, each of which would show up
// in gcd(full, z^(q^i) - z) for its degree i.
bool is_irreducible_monic(const Dense& full, uint64_t q) {
  size_t m = full.size() - 1;
  Dense r{0, 1 % q};
  dense_trim(r);
  for (size_t i = 1; i <= m / 2; ++i) {
    r = dense_pow_mod(r, q, full, q);
    Dense diff = r;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = sub_mod(diff[1], 1 % q, q);
    dense_trim(diff);
    Dense g = diff.empty() ? full : dense_gcd(full, diff, q);
    if (g.size() != 1) return false;
  }
  return true;
}

Dense full_modulus(const std::vector<uint64_t>& low_coeffs) {
  Dense full(low_coeffs.begin(), low_coeffs.end());
  full.push_back(1);
  return full;
}

void validate_q(uint64_t q) {
  if (q >= (1ULL << 63)) throw invalid_input("field characteristic must be below 2^63");
  if (!is_prime_u64(q)) throw invalid_input("field characteristic must be prime");
}

}  // namespace

FieldCtx FieldCtx::prime_field(uint64_t q) {
  validate_q(q);
  FieldCtx f;
  f.q_ = q;
  f.m_ = 1;
  f.size_ = q;
  f.order_ = bigint(q) - 1;
  return f;
}

FieldCtx FieldCtx::extension_field(uint64_t q, unsigned m, std::vector<uint64_t> modulus) {
  validate_q(q);
  if (m == 0) throw invalid_input("extension degree must be >= 1");
  if (m == 1) {
    if (!modulus.empty()) throw invalid_input("degree-1 field takes no modulus");
    return prime_field(q);
  }
  if (modulus.size() != m) throw invalid_input("modulus needs exactly m non-leading coefficients");
  for (uint64_t c : modulus) {
    if (c >= q) throw invalid_input("modulus coefficient out of range");
  }
  if (!is_irreducible_monic(full_modulus(modulus), q)) {
    throw invalid_input("modulus is not irreducible");
  }
  FieldCtx f;
  f.q_ = q;
  f.m_ = m;
  f.modulus_ = std::move(modulus);
  f.size_ = boost::multiprecision::pow(bigint(q), m);
  f.order_ = f.size_ - 1;
  return f;
}

FieldCtx FieldCtx::make(uint64_t q, unsigned m, std::mt19937_64& rng) {
  if (m == 0) throw invalid_input("extension degree must be >= 1");
  FieldCtx f = m == 1 ? prime_field(q) : extension_field(q, m, find_irreducible(q, m, rng));
  return f.with_primitive(find_primitive(f, rng));
}

const FieldElem& FieldCtx::primitive() const {
  if (!primitive_) throw error("field context has no primitive element");
  return *primitive_;
}

FieldCtx FieldCtx::with_primitive(FieldElem w) const {
  check_elem(w);
  if (is_zero(w)) throw invalid_input("primitive element must be nonzero");
  if (!is_one(pow(w, order_))) throw invalid_input("claimed primitive element has wrong order");
  for (const bigint& r : distinct_prime_factors(order_)) {
    if (is_one(pow(w, order_ / r))) {
      throw invalid_input("claimed primitive element has wrong order");
    }
  }
  FieldCtx f = *this;
  f.primitive_ = std::move(w);
  return f;
}

void FieldCtx::check_elem(const FieldElem& a) const {
  if (a.width() != m_) throw invalid_input("field element has wrong width for this context");
}

FieldElem FieldCtx::zero() const {
  FieldElem e;
  e.c.assign(m_, 0);
  return e;
}

FieldElem FieldCtx::one() const {
  return from_residue(1);
}

FieldElem FieldCtx::from_residue(uint64_t v) const {
  FieldElem e;
  e.c.assign(m_, 0);
  e.c[0] = v % q_;
  return e;
}

FieldElem FieldCtx::from_coeffs(std::vector<uint64_t> v) const {
  if (v.size() != m_) throw invalid_input("coefficient vector has wrong length");
  FieldElem e;
  e.c.assign(v.begin(), v.end());
  for (auto& x : e.c) {
    if (x >= q_) throw invalid_input("coefficient out of range");
  }
  return e;
}

FieldElem FieldCtx::random_element(std::mt19937_64& rng) const {
  FieldElem e;
  e.c.resize(m_);
  for (auto& x : e.c) x = uniform_below(rng, q_);
  return e;
}

FieldElem FieldCtx::random_nonzero(std::mt19937_64& rng) const {
  for (;;) {
    FieldElem e = random_element(rng);
    if (!is_zero(e)) return e;
  }
}

bool FieldCtx::is_zero(const FieldElem& a) const {
  check_elem(a);
  return std::all_of(a.c.begin(), a.c.end(), [](uint64_t v) { return v == 0; });
}

bool FieldCtx::is_one(const FieldElem& a) const {
  check_elem(a);
  if (a.c[0] != 1 % q_) return false;
  return std::all_of(a.c.begin() + 1, a.c.end(), [](uint64_t v) { return v == 0; });
}

bool FieldCtx::in_prime_field(const FieldElem& a) const {
  check_elem(a);
  return std::all_of(a.c.begin() + 1, a.c.end(), [](uint64_t v) { return v == 0; });
}

FieldElem FieldCtx::project_prime(const FieldElem& a) const {
  if (!in_prime_field(a)) throw interp_failure("recovered coefficient lies outside the base field");
  FieldElem e;
  e.c.assign(1, a.c[0]);
  return e;
}

FieldElem FieldCtx::embed(const FieldElem& a) const {
  if (a.width() != 1) throw invalid_input("embed expects a width-1 element");
  FieldElem e;
  e.c.assign(m_, 0);
  e.c[0] = a.c[0] % q_;
  return e;
}

FieldElem FieldCtx::add(const FieldElem& a, const FieldElem& b) const {
  check_elem(a);
  check_elem(b);
  FieldElem r = a;
  for (unsigned i = 0; i < m_; ++i) r.c[i] = add_mod(r.c[i], b.c[i], q_);
  return r;
}

FieldElem FieldCtx::sub(const FieldElem& a, const FieldElem& b) const {
  check_elem(a);
  check_elem(b);
  FieldElem r = a;
  for (unsigned i = 0; i < m_; ++i) r.c[i] = sub_mod(r.c[i], b.c[i], q_);
  return r;
}

FieldElem FieldCtx::neg(const FieldElem& a) const {
  check_elem(a);
  FieldElem r = a;
  for (unsigned i = 0; i < m_; ++i) r.c[i] = r.c[i] == 0 ? 0 : q_ - r.c[i];
  return r;
}

void FieldCtx::reduce_in_place(boost::container::small_vector<uint64_t, 4>& t) const {
  // t holds up to 2m-1 coefficients; fold the top down with the monic modulus.
  for (size_t i = t.size(); i-- > m_;) {
    uint64_t c = t[i];
    if (c == 0) continue;
    for (unsigned j = 0; j < m_; ++j) {
      t[i - m_ + j] = sub_mod(t[i - m_ + j], mul_mod(c, modulus_[j], q_), q_);
    }
  }
}

FieldElem FieldCtx::mul(const FieldElem& a, const FieldElem& b) const {
  check_elem(a);
  check_elem(b);
  if (m_ == 1) {
    FieldElem r;
    r.c.assign(1, mul_mod(a.c[0], b.c[0], q_));
    return r;
  }
  boost::container::small_vector<uint64_t, 4> t(2 * m_ - 1, 0);
  for (unsigned i = 0; i < m_; ++i) {
    if (a.c[i] == 0) continue;
    for (unsigned j = 0; j < m_; ++j) {
      t[i + j] = add_mod(t[i + j], mul_mod(a.c[i], b.c[j], q_), q_);
    }
  }
  reduce_in_place(t);
  FieldElem r;
  r.c.assign(t.begin(), t.begin() + m_);
  return r;
}

FieldElem FieldCtx::inv(const FieldElem& a) const {
  if (is_zero(a)) throw invalid_input("division by zero in field arithmetic");
  if (m_ == 1) {
    FieldElem r;
    r.c.assign(1, inv_mod(a.c[0], q_));
    return r;
  }
  return pow(a, size_ - 2);
}

FieldElem FieldCtx::div(const FieldElem& a, const FieldElem& b) const {
  return mul(a, inv(b));
}

FieldElem FieldCtx::pow(const FieldElem& a, uint64_t e) const {
  check_elem(a);
  FieldElem r = one();
  FieldElem base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

FieldElem FieldCtx::pow(const FieldElem& a, const bigint& e) const {
  check_elem(a);
  if (e < 0) throw invalid_input("negative exponent");
  if (e == 0) return one();
  FieldElem r = a;
  for (int64_t bit = static_cast<int64_t>(boost::multiprecision::msb(e)) - 1; bit >= 0; --bit) {
    r = mul(r, r);
    if (boost::multiprecision::bit_test(e, static_cast<unsigned>(bit))) r = mul(r, a);
  }
  return r;
}

std::vector<uint64_t> find_irreducible(uint64_t q, unsigned m, std::mt19937_64& rng) {
  validate_q(q);
  if (m < 2) throw invalid_input("find_irreducible needs degree >= 2");
  for (;;) {
    std::vector<uint64_t> low(m);
    for (auto& c : low) c = uniform_below(rng, q);
    if (low[0] == 0) continue;  // reducible: z divides
    if (is_irreducible_monic(full_modulus(low), q)) return low;
  }
}

std::vector<uint64_t> default_modulus(uint64_t q, unsigned m) {
  validate_q(q);
  if (m < 2) throw invalid_input("default_modulus needs degree >= 2");
  // Enumerate coefficient vectors as base-q digits of a counter; the first
  // irreducible hit is the canonical modulus for (q, m).
  for (bigint j = 0;; ++j) {
    std::vector<uint64_t> low(m);
    bigint v = j;
    for (unsigned i = 0; i < m; ++i) {
      low[i] = static_cast<uint64_t>(v % q);
      v /= q;
    }
    if (v != 0) throw error("no irreducible modulus found");  // unreachable
    if (low[0] == 0) continue;
    if (is_irreducible_monic(full_modulus(low), q)) return low;
  }
}

FieldElem find_primitive(const FieldCtx& ctx, std::mt19937_64& rng) {
  std::vector<bigint> factors = distinct_prime_factors(ctx.order());
  for (;;) {
    FieldElem w = ctx.random_nonzero(rng);
    bool ok = true;
    for (const bigint& r : factors) {
      if (ctx.is_one(ctx.pow(w, ctx.order() / r))) {
        ok = false;
        break;
      }
    }
    if (ok) return w;
  }
}

}  // namespace rkron
