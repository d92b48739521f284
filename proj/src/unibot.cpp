#include "rkron/unibot.hpp"

#include <algorithm>
#include <optional>

namespace rkron {

unsigned choose_extension(uint64_t q, uint64_t degree_bound) {
  FieldCtx::prime_field(q);  // validate q
  bigint want = bigint(degree_bound) + 2;
  bigint sz = q;
  unsigned m = 1;
  while (sz < want) {
    sz *= q;
    ++m;
  }
  return m;
}

std::vector<FieldElem> berlekamp_massey(std::span<const FieldElem> a, const FieldCtx& F) {
  std::vector<FieldElem> C{F.one()}, B{F.one()};
  size_t L = 0, gap = 1;
  FieldElem b = F.one();
  for (size_t i = 0; i < a.size(); ++i) {
    FieldElem d = a[i];
    for (size_t j = 1; j <= L && j < C.size(); ++j) d = F.add(d, F.mul(C[j], a[i - j]));
    if (F.is_zero(d)) {
      ++gap;
      continue;
    }
    FieldElem coef = F.div(d, b);
    if (2 * L <= i) {
      std::vector<FieldElem> keep = C;
      if (C.size() < B.size() + gap) C.resize(B.size() + gap, F.zero());
      for (size_t j = 0; j < B.size(); ++j) C[j + gap] = F.sub(C[j + gap], F.mul(coef, B[j]));
      L = i + 1 - L;
      B = std::move(keep);
      b = d;
      gap = 1;
    } else {
      if (C.size() < B.size() + gap) C.resize(B.size() + gap, F.zero());
      for (size_t j = 0; j < B.size(); ++j) C[j + gap] = F.sub(C[j + gap], F.mul(coef, B[j]));
      ++gap;
    }
  }
  // C is the connection polynomial with C[0] = 1; the monic minimal
  // polynomial of the recurrence is its degree-L reversal.
  std::vector<FieldElem> zeta(L + 1, F.zero());
  for (size_t j = 0; j <= L; ++j) zeta[L - j] = j < C.size() ? C[j] : F.zero();
  return zeta;
}

namespace {

// Dense univariate polynomials over a FieldCtx, low degree first, trimmed so
// empty means zero.  Degrees stay tiny (at most the term bound), so
// schoolbook arithmetic throughout.
using DPoly = std::vector<FieldElem>;

void dtrim(DPoly& a, const FieldCtx& F) {
  while (!a.empty() && F.is_zero(a.back())) a.pop_back();
}

FieldElem deval(std::span<const FieldElem> a, const FieldElem& x, const FieldCtx& F) {
  FieldElem acc = F.zero();
  for (size_t i = a.size(); i-- > 0;) acc = F.add(F.mul(acc, x), a[i]);
  return acc;
}

DPoly dmul(const DPoly& a, const DPoly& b, const FieldCtx& F) {
  if (a.empty() || b.empty()) return {};
  DPoly t(a.size() + b.size() - 1, F.zero());
  for (size_t i = 0; i < a.size(); ++i) {
    if (F.is_zero(a[i])) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      t[i + j] = F.add(t[i + j], F.mul(a[i], b[j]));
    }
  }
  dtrim(t, F);
  return t;
}

// a mod b, destructive; b nonzero.
void drem(DPoly& a, const DPoly& b, const FieldCtx& F) {
  FieldElem lead_inv = F.inv(b.back());
  while (a.size() >= b.size()) {
    FieldElem c = F.mul(a.back(), lead_inv);
    size_t shift = a.size() - b.size();
    if (!F.is_zero(c)) {
      for (size_t j = 0; j + 1 < b.size(); ++j) {
        a[shift + j] = F.sub(a[shift + j], F.mul(c, b[j]));
      }
    }
    a.pop_back();
    dtrim(a, F);
    if (a.empty()) return;
  }
}

// Quotient a / b for exact multiples.
DPoly dquo(DPoly a, const DPoly& b, const FieldCtx& F) {
  FieldElem lead_inv = F.inv(b.back());
  DPoly quo(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, F.zero());
  while (a.size() >= b.size()) {
    FieldElem c = F.mul(a.back(), lead_inv);
    size_t shift = a.size() - b.size();
    quo[shift] = c;
    if (!F.is_zero(c)) {
      for (size_t j = 0; j + 1 < b.size(); ++j) {
        a[shift + j] = F.sub(a[shift + j], F.mul(c, b[j]));
      }
    }
    a.pop_back();
    dtrim(a, F);
    if (a.empty()) break;
  }
  if (!a.empty()) throw error("internal: inexact polynomial division");
  return quo;
}

void dmonic(DPoly& a, const FieldCtx& F) {
  if (a.empty() || F.is_one(a.back())) return;
  FieldElem s = F.inv(a.back());
  for (auto& c : a) c = F.mul(c, s);
}

DPoly dgcd(DPoly a, DPoly b, const FieldCtx& F) {
  dtrim(a, F);
  dtrim(b, F);
  while (!b.empty()) {
    drem(a, b, F);
    std::swap(a, b);
  }
  dmonic(a, F);
  return a;
}

DPoly dpow_mod(DPoly base, const bigint& e, const DPoly& mod, const FieldCtx& F) {
  drem(base, mod, F);
  DPoly r{F.one()};
  if (e == 0) return r;
  for (int64_t bit = static_cast<int64_t>(boost::multiprecision::msb(e)); bit >= 0; --bit) {
    r = dmul(r, r, F);
    drem(r, mod, F);
    if (boost::multiprecision::bit_test(e, static_cast<unsigned>(bit))) {
      r = dmul(r, base, F);
      drem(r, mod, F);
    }
  }
  return r;
}

// One random try at splitting f (monic, squarefree, splits over F, deg >= 2)
// into two proper factors.  Returns false if the try separated nothing.
bool try_split(const DPoly& f, std::mt19937_64& rng, const FieldCtx& F, DPoly& g_out) {
  DPoly probe;
  if (F.q() % 2 == 1) {
    // Character of a random shift: gcd with (z+r)^((Q-1)/2) - 1 keeps the
    // roots whose shift is a nonzero square.
    FieldElem r = F.random_element(rng);
    DPoly base{r, F.one()};
    probe = dpow_mod(std::move(base), F.order() / 2, f, F);
    if (probe.empty()) {
      probe = DPoly{F.neg(F.one())};
    } else {
      probe[0] = F.sub(probe[0], F.one());
      dtrim(probe, F);
    }
  } else {
    // Characteristic 2: the absolute trace of r*z splits roots by trace value.
    FieldElem r = F.random_nonzero(rng);
    DPoly y{F.zero(), r};
    drem(y, f, F);
    DPoly acc = y;
    for (unsigned i = 1; i < F.m(); ++i) {
      y = dmul(y, y, F);
      drem(y, f, F);
      if (acc.size() < y.size()) acc.resize(y.size(), F.zero());
      for (size_t j = 0; j < y.size(); ++j) acc[j] = F.add(acc[j], y[j]);
    }
    dtrim(acc, F);
    probe = std::move(acc);
  }
  if (probe.empty()) return false;
  DPoly g = dgcd(f, probe, F);
  if (g.size() <= 1 || g.size() >= f.size()) return false;
  g_out = std::move(g);
  return true;
}

void split_all(DPoly f, std::mt19937_64& rng, const FieldCtx& F, std::vector<FieldElem>& out) {
  if (f.size() <= 1) return;
  if (f.size() == 2) {
    out.push_back(F.neg(f[0]));  // monic linear: z + c
    return;
  }
  for (int attempt = 0; attempt < 64; ++attempt) {
    DPoly g;
    if (!try_split(f, rng, F, g)) continue;
    DPoly h = dquo(std::move(f), g, F);
    split_all(std::move(g), rng, F, out);
    split_all(std::move(h), rng, F, out);
    return;
  }
  throw interp_failure("equal-degree splitting made no progress");
}

// All field elements, for exhaustive root search over small fields.
std::vector<FieldElem> enumerate_field(const FieldCtx& F) {
  std::vector<FieldElem> all;
  FieldElem v = F.zero();
  for (;;) {
    all.push_back(v);
    unsigned i = 0;
    while (i < F.m() && ++v.c[i] == F.q()) v.c[i++] = 0;
    if (i == F.m()) return all;
  }
}

}  // namespace

std::vector<FieldElem> find_roots(std::span<const FieldElem> zeta, const FieldCtx& F) {
  DPoly f(zeta.begin(), zeta.end());
  dtrim(f, F);
  if (f.empty()) throw invalid_input("cannot take roots of the zero polynomial");
  dmonic(f, F);
  std::vector<FieldElem> roots;
  if (f.size() == 1) return roots;
  if (F.size() <= 4096) {
    for (const FieldElem& v : enumerate_field(F)) {
      if (F.is_zero(deval(f, v, F))) roots.push_back(v);
    }
    return roots;
  }
  // Fixed seed: the root set is unique, so the randomness only steers how the
  // factor tree unfolds, and results stay reproducible.
  std::mt19937_64 rng(0x5eed0f1e1dULL);
  split_all(std::move(f), rng, F, roots);
  return roots;
}

namespace {

// Baby-step giant-step table for repeated logs to the same base and bound.
class BsgsTable {
 public:
  BsgsTable(const FieldElem& omega, uint64_t bound, const FieldCtx& F)
      : F_(F), bound_(bound) {
    step_ = 1;
    while (step_ * step_ < bound + 1) ++step_;
    uint64_t babies = std::min<uint64_t>(step_, bound + 1);
    baby_.reserve(babies);
    FieldElem w = F.one();
    for (uint64_t b = 0; b < babies; ++b) {
      baby_.emplace_back(w, b);
      w = F.mul(w, omega);
    }
    std::sort(baby_.begin(), baby_.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    giant_ = F.pow(F.inv(omega), step_);
  }

  std::optional<uint64_t> lookup(const FieldElem& v) const {
    FieldElem y = v;
    for (uint64_t a = 0; a * step_ <= bound_; ++a) {
      auto it = std::lower_bound(
          baby_.begin(), baby_.end(), y,
          [](const auto& entry, const FieldElem& key) { return entry.first < key; });
      if (it != baby_.end() && it->first == y) {
        uint64_t e = a * step_ + it->second;
        return e <= bound_ ? std::optional<uint64_t>(e) : std::nullopt;
      }
      y = F_.mul(y, giant_);
    }
    return std::nullopt;
  }

 private:
  const FieldCtx& F_;
  uint64_t bound_;
  uint64_t step_;
  std::vector<std::pair<FieldElem, uint64_t>> baby_;
  FieldElem giant_;
};

}  // namespace

uint64_t bsgs_dlog(const FieldElem& v, const FieldElem& omega, uint64_t bound,
                   const FieldCtx& F) {
  if (F.is_zero(v)) throw interp_failure("zero has no discrete log");
  auto e = BsgsTable(omega, bound, F).lookup(v);
  if (!e) throw interp_failure("no exponent within the degree bound matches");
  return *e;
}

std::vector<FieldElem> solve_transposed_vandermonde(std::span<const FieldElem> v,
                                                    std::span<const FieldElem> a,
                                                    const FieldCtx& F) {
  if (v.size() != a.size()) throw invalid_input("node and moment counts differ");
  size_t t = v.size();
  if (t == 0) return {};
  for (size_t i = 0; i < t; ++i) {
    for (size_t j = i + 1; j < t; ++j) {
      if (v[i] == v[j]) throw invalid_input("transposed Vandermonde nodes must be distinct");
    }
  }
  // Master polynomial P = prod (z - v_j).
  DPoly P{F.one()};
  for (const FieldElem& node : v) {
    P.insert(P.begin(), F.zero());  // multiply by z
    FieldElem nn = F.neg(node);
    for (size_t i = 0; i + 1 < P.size(); ++i) P[i] = F.add(P[i], F.mul(nn, P[i + 1]));
  }
  std::vector<FieldElem> c(t);
  DPoly Q(t);  // P / (z - v_j), recovered by synthetic division
  for (size_t j = 0; j < t; ++j) {
    Q[t - 1] = F.one();
    for (size_t i = t - 1; i > 0; --i) {
      Q[i - 1] = F.add(P[i], F.mul(v[j], Q[i]));
    }
    FieldElem num = F.zero();
    for (size_t i = 0; i < t; ++i) num = F.add(num, F.mul(Q[i], a[i]));
    c[j] = F.div(num, deval(Q, v[j], F));
  }
  return c;
}

namespace {

UniPoly bot_core(BlackBox& oracle, uint64_t term_bound, uint64_t degree_bound,
                 const FieldCtx& ctx, bool dlog, bool project) {
  if (oracle.arity() != 1) throw invalid_input("univariate interpolation needs a unary oracle");
  if (ctx.size() < bigint(degree_bound) + 2) {
    throw invalid_input("field too small for the degree bound");
  }
  if (term_bound == 0) return UniPoly{};
  const FieldElem& w = ctx.primitive();

  // Probe at consecutive powers of the primitive element.
  std::vector<FieldElem> a;
  a.reserve(2 * term_bound);
  FieldElem pt = ctx.one();
  for (uint64_t i = 0; i < 2 * term_bound; ++i) {
    a.push_back(oracle.eval(std::span<const FieldElem>(&pt, 1), ctx));
    pt = ctx.mul(pt, w);
  }

  std::vector<FieldElem> zeta = berlekamp_massey(a, ctx);
  size_t t = zeta.size() - 1;
  if (t == 0) return UniPoly{};
  if (t > term_bound) throw interp_failure("recurrence order exceeds the term bound");
  // The minimal recurrence must annihilate every probe window.
  for (size_t j = 0; j + t < a.size(); ++j) {
    FieldElem acc = a[j + t];
    for (size_t k = 0; k < t; ++k) acc = ctx.add(acc, ctx.mul(zeta[k], a[j + k]));
    if (!ctx.is_zero(acc)) throw interp_failure("probe sequence has no sparse explanation");
  }

  std::vector<uint64_t> exps;
  std::vector<FieldElem> nodes;
  exps.reserve(t);
  nodes.reserve(t);
  if (!dlog) {
    FieldElem x = ctx.one();
    for (uint64_t i = 0; i <= degree_bound && exps.size() < t; ++i) {
      if (ctx.is_zero(deval(zeta, x, ctx))) {
        exps.push_back(i);
        nodes.push_back(x);
      }
      x = ctx.mul(x, w);
    }
  } else {
    std::vector<FieldElem> roots = find_roots(zeta, ctx);
    if (roots.size() == t) {
      BsgsTable table(w, degree_bound, ctx);
      std::vector<std::pair<uint64_t, FieldElem>> found;
      found.reserve(t);
      for (const FieldElem& r : roots) {
        if (ctx.is_zero(r)) throw interp_failure("spurious zero root");
        auto e = table.lookup(r);
        if (!e) throw interp_failure("no exponent within the degree bound matches");
        found.emplace_back(*e, r);
      }
      std::sort(found.begin(), found.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      for (auto& [e, r] : found) {
        exps.push_back(e);
        nodes.push_back(std::move(r));
      }
    }
  }
  if (exps.size() != t) {
    throw interp_failure("exponents missing within the degree bound");
  }

  std::vector<FieldElem> coeffs =
      solve_transposed_vandermonde(nodes, std::span(a).first(t), ctx);

  // Cross-check all probes, not just the t used for the solve.
  std::vector<FieldElem> pw(t, ctx.one());
  for (size_t i = 0; i < a.size(); ++i) {
    FieldElem acc = ctx.zero();
    for (size_t j = 0; j < t; ++j) {
      acc = ctx.add(acc, ctx.mul(coeffs[j], pw[j]));
      pw[j] = ctx.mul(pw[j], nodes[j]);
    }
    if (!(acc == a[i])) throw interp_failure("recovered polynomial disagrees with probes");
  }

  bool narrow = project && ctx.m() > 1;
  std::vector<UniTerm> terms;
  terms.reserve(t);
  for (size_t j = 0; j < t; ++j) {
    terms.push_back({narrow ? ctx.project_prime(coeffs[j]) : coeffs[j], bigint(exps[j])});
  }
  return UniPoly::from_terms(std::move(terms),
                             narrow ? FieldCtx::prime_field(ctx.q()) : ctx);
}

}  // namespace

UniPoly bot_exhaustive(BlackBox& oracle, uint64_t term_bound, uint64_t degree_bound,
                       const FieldCtx& ctx, bool project_coeffs_to_prime) {
  return bot_core(oracle, term_bound, degree_bound, ctx, false, project_coeffs_to_prime);
}

UniPoly bot_dlog(BlackBox& oracle, uint64_t term_bound, uint64_t degree_bound,
                 const FieldCtx& ctx, bool project_coeffs_to_prime) {
  return bot_core(oracle, term_bound, degree_bound, ctx, true, project_coeffs_to_prime);
}

UniPoly UnivariateInterpolator::interpolate(BlackBox& oracle, uint64_t term_bound,
                                            const bigint& degree_bound, const FieldCtx& base) {
  if (degree_bound < 0) throw invalid_input("degree bound must be nonnegative");
  if (degree_bound > (bigint(1) << 62)) throw invalid_input("degree bound too large");
  uint64_t dp = static_cast<uint64_t>(degree_bound);
  const FieldCtx& ctx = eval_context(degree_bound, base);
  bool lifted = ctx.m() != base.m();
  UniPoly h = backend_ == Backend::exhaustive
                  ? bot_exhaustive(oracle, term_bound, dp, ctx, lifted)
                  : bot_dlog(oracle, term_bound, dp, ctx, lifted);
  if (h.term_count() > term_bound || h.degree() > degree_bound) {
    throw interp_failure("interpolation result breaks its own bounds");
  }
  return h;
}

const FieldCtx& UnivariateInterpolator::eval_context(const bigint& degree_bound,
                                                     const FieldCtx& base) {
  if (base.size() >= degree_bound + 2) {
    if (!base.has_primitive()) {
      throw invalid_input("field context lacks a primitive element");
    }
    return base;
  }
  if (base.m() != 1) {
    throw invalid_input("cannot auto-extend a field that is already an extension");
  }
  unsigned m = choose_extension(base.q(), static_cast<uint64_t>(degree_bound));
  auto it = lifts_.find(m);
  if (it == lifts_.end() || it->second.q() != base.q()) {
    it = lifts_.insert_or_assign(m, FieldCtx::make(base.q(), m, ext_rng_)).first;
  }
  return it->second;
}

}  // namespace rkron
