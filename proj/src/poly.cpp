#include "rkron/poly.hpp"

#include <algorithm>

namespace rkron {

MultiPoly MultiPoly::from_terms(unsigned nvars, std::vector<MultiTerm> terms, const FieldCtx& F) {
  MultiPoly f(nvars);
  for (const auto& t : terms) {
    if (t.exps.size() != nvars) throw invalid_input("term has wrong number of exponents");
    F.is_zero(t.coeff);  // width check
  }
  std::sort(terms.begin(), terms.end(), [](const MultiTerm& a, const MultiTerm& b) {
    return std::lexicographical_compare(a.exps.begin(), a.exps.end(), b.exps.begin(),
                                        b.exps.end());
  });
  for (auto& t : terms) {
    if (!f.terms_.empty() && f.terms_.back().exps == t.exps) {
      f.terms_.back().coeff = F.add(f.terms_.back().coeff, t.coeff);
    } else {
      f.terms_.push_back(std::move(t));
    }
  }
  std::erase_if(f.terms_, [&](const MultiTerm& t) { return F.is_zero(t.coeff); });
  return f;
}

uint64_t MultiPoly::total_degree() const {
  uint64_t d = 0;
  for (const auto& t : terms_) {
    uint64_t s = 0;
    for (uint64_t e : t.exps) s += e;
    d = std::max(d, s);
  }
  return d;
}

UniPoly UniPoly::from_terms(std::vector<UniTerm> terms, const FieldCtx& F) {
  for (const auto& t : terms) {
    if (t.exp < 0) throw invalid_input("negative exponent");
    F.is_zero(t.coeff);  // width check
  }
  std::sort(terms.begin(), terms.end(),
            [](const UniTerm& a, const UniTerm& b) { return a.exp < b.exp; });
  UniPoly h;
  for (auto& t : terms) {
    if (!h.terms_.empty() && h.terms_.back().exp == t.exp) {
      h.terms_.back().coeff = F.add(h.terms_.back().coeff, t.coeff);
    } else {
      h.terms_.push_back(std::move(t));
    }
  }
  std::erase_if(h.terms_, [&](const UniTerm& t) { return F.is_zero(t.coeff); });
  return h;
}

namespace {

void check_same_arity(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars() != b.nvars()) throw invalid_input("polynomials have different arity");
}

std::vector<MultiTerm> negated(const MultiPoly& p, const FieldCtx& F) {
  std::vector<MultiTerm> ts = p.terms();
  for (auto& t : ts) t.coeff = F.neg(t.coeff);
  return ts;
}

}  // namespace

MultiPoly add(const MultiPoly& a, const MultiPoly& b, const FieldCtx& F) {
  check_same_arity(a, b);
  std::vector<MultiTerm> ts = a.terms();
  ts.insert(ts.end(), b.terms().begin(), b.terms().end());
  return MultiPoly::from_terms(a.nvars(), std::move(ts), F);
}

MultiPoly sub(const MultiPoly& a, const MultiPoly& b, const FieldCtx& F) {
  check_same_arity(a, b);
  std::vector<MultiTerm> ts = a.terms();
  std::vector<MultiTerm> nb = negated(b, F);
  ts.insert(ts.end(), nb.begin(), nb.end());
  return MultiPoly::from_terms(a.nvars(), std::move(ts), F);
}

UniPoly add(const UniPoly& a, const UniPoly& b, const FieldCtx& F) {
  std::vector<UniTerm> ts = a.terms();
  ts.insert(ts.end(), b.terms().begin(), b.terms().end());
  return UniPoly::from_terms(std::move(ts), F);
}

UniPoly sub(const UniPoly& a, const UniPoly& b, const FieldCtx& F) {
  std::vector<UniTerm> ts = a.terms();
  for (const auto& t : b.terms()) ts.push_back({F.neg(t.coeff), t.exp});
  return UniPoly::from_terms(std::move(ts), F);
}

FieldElem eval_multi(const MultiPoly& f, std::span<const FieldElem> point, const FieldCtx& F) {
  if (point.size() != f.nvars()) throw invalid_input("evaluation point has wrong arity");
  FieldElem acc = F.zero();
  for (const auto& t : f.terms()) {
    FieldElem v = t.coeff;
    for (unsigned k = 0; k < f.nvars(); ++k) {
      if (t.exps[k] != 0) v = F.mul(v, F.pow(point[k], t.exps[k]));
    }
    acc = F.add(acc, v);
  }
  return acc;
}

FieldElem eval_uni(const UniPoly& h, const FieldElem& x, const FieldCtx& F) {
  FieldElem acc = F.zero();
  for (const auto& t : h.terms()) {
    acc = F.add(acc, F.mul(t.coeff, F.pow(x, t.exp)));
  }
  return acc;
}

UniPoly kronecker_sub(const MultiPoly& f, std::span<const uint64_t> s, const FieldCtx& F) {
  if (s.size() != f.nvars()) throw invalid_input("substitution vector has wrong arity");
  std::vector<UniTerm> ts;
  ts.reserve(f.term_count());
  for (const auto& t : f.terms()) {
    bigint e = 0;
    for (unsigned k = 0; k < f.nvars(); ++k) e += bigint(t.exps[k]) * s[k];
    ts.push_back({t.coeff, std::move(e)});
  }
  return UniPoly::from_terms(std::move(ts), F);
}

UniPoly mod_cyclic(const UniPoly& h, uint64_t p, const FieldCtx& F) {
  if (p == 0) throw invalid_input("cyclic modulus must be positive");
  std::vector<UniTerm> ts;
  ts.reserve(h.term_count());
  for (const auto& t : h.terms()) {
    ts.push_back({t.coeff, t.exp % p});
  }
  return UniPoly::from_terms(std::move(ts), F);
}

std::vector<UniPoly> poly_subs(const MultiPoly& g, std::span<const uint64_t> s, uint64_t p,
                               const FieldCtx& F) {
  if (s.size() != g.nvars()) throw invalid_input("substitution vector has wrong arity");
  unsigned n = g.nvars();
  std::vector<std::vector<UniTerm>> out(n);
  for (auto& v : out) v.reserve(g.term_count());
  for (const auto& t : g.terms()) {
    bigint d = 0;
    for (unsigned j = 0; j < n; ++j) d += bigint(t.exps[j]) * s[j];
    // Shifting variable k by p turns the image exponent into d + e_k p.
    for (unsigned k = 0; k < n; ++k) {
      out[k].push_back({t.coeff, d + bigint(t.exps[k]) * p});
    }
  }
  std::vector<UniPoly> hs;
  hs.reserve(n);
  for (auto& v : out) hs.push_back(UniPoly::from_terms(std::move(v), F));
  return hs;
}

namespace {

// Index -> monomial bijection for { e in N^n : sum e <= D }, lexicographic.
// Completions with r variables left and budget d number binomial(d + r, r);
// prefix sums telescope, so each digit falls out of a binary search.
std::vector<uint64_t> unrank_monomial(unsigned n, uint64_t D, bigint idx) {
  std::vector<uint64_t> e(n);
  uint64_t budget = D;
  for (unsigned k = 0; k < n; ++k) {
    uint64_t r = n - 1 - k;  // variables after this one
    // count of monomials with e_k < v: binomial(budget+r+1, r+1) - binomial(budget-v+r+1, r+1)
    bigint whole = binomial(budget + r + 1, r + 1);
    uint64_t lo = 0, hi = budget;  // smallest v with prefix(v+1) > idx
    while (lo < hi) {
      uint64_t mid = lo + (hi - lo) / 2;
      bigint prefix_after = whole - binomial(budget - mid - 1 + r + 1, r + 1);
      if (prefix_after > idx) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    bigint prefix = whole - binomial(budget - lo + r + 1, r + 1);
    idx -= prefix;
    e[k] = lo;
    budget -= lo;
  }
  return e;
}

}  // namespace

MultiPoly random_poly(const FieldCtx& F, unsigned n, uint64_t t, uint64_t D, uint64_t seed) {
  if (n == 0) throw invalid_input("polynomial needs at least one variable");
  bigint space = binomial(D + n, n);
  if (bigint(t) > space) {
    throw invalid_input("more terms requested than monomials of that degree exist");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::vector<uint64_t>> chosen;
  while (chosen.size() < t) {
    std::vector<uint64_t> e = unrank_monomial(n, D, uniform_below_big(rng, space));
    if (std::find(chosen.begin(), chosen.end(), e) == chosen.end()) {
      chosen.push_back(std::move(e));
    }
  }
  std::vector<MultiTerm> ts;
  ts.reserve(t);
  for (auto& e : chosen) {
    ts.push_back({F.random_nonzero(rng), std::move(e)});
  }
  return MultiPoly::from_terms(n, std::move(ts), F);
}

BlackBox make_poly_blackbox(MultiPoly f, FieldCtx home) {
  unsigned arity = f.nvars();
  return BlackBox(arity, [f = std::move(f), home = std::move(home)](
                             std::span<const FieldElem> point, const FieldCtx& ctx) {
    if (ctx.same_field(home)) return eval_multi(f, point, ctx);
    if (home.m() != 1 || ctx.q() != home.q()) {
      throw invalid_input("oracle cannot answer queries over this field");
    }
    // Query over an extension: home coefficients embed as constants.
    FieldElem acc = ctx.zero();
    for (const auto& t : f.terms()) {
      FieldElem v = ctx.embed(t.coeff);
      for (unsigned k = 0; k < f.nvars(); ++k) {
        if (t.exps[k] != 0) v = ctx.mul(v, ctx.pow(point[k], t.exps[k]));
      }
      acc = ctx.add(acc, v);
    }
    return acc;
  });
}

}  // namespace rkron
