#include "rkron/kronecker.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace rkron {

ReductionConfig ReductionConfig::make(uint64_t T, uint64_t D, double mu) {
  if (mu <= 0 || mu >= 1) throw invalid_input("failure tolerance must lie in (0, 1)");
  if (D < 1) throw invalid_input("degree bound must be >= 1");
  ReductionConfig c;
  c.T = T;
  c.D = D;
  c.mu = mu;
  c.nu = T >= 1 ? mu / (ceil_log2_u64(T) + 1) : mu;
  c.T1 = T;
  return c;
}

uint64_t ReductionConfig::substitution_count() const {
  if (T1 < 1) throw invalid_input("substitution count needs a positive residual bound");
  return static_cast<uint64_t>(std::ceil(32.0 * std::log(static_cast<double>(T1) / nu)));
}

uint64_t ReductionConfig::pool_size() const {
  if (T1 < 1) throw invalid_input("pool size needs a positive residual bound");
  return std::max<uint64_t>(31 * ceil_log2_pow(D, T1 - 1), 1);
}

std::vector<uint64_t> prime_pool(uint64_t T1, uint64_t D) {
  if (T1 < 1) throw invalid_input("term bound must be >= 1");
  if (D < 1) throw invalid_input("degree bound must be >= 1");
  uint64_t count = std::max<uint64_t>(31 * ceil_log2_pow(D, T1 - 1), 1);
  return primes_at_least(32 * (T1 - 1), count);
}

std::vector<SubstitutionPair> sample_substitutions(std::span<const uint64_t> pool, unsigned n,
                                                   uint64_t l, std::mt19937_64& rng) {
  if (pool.empty()) throw invalid_input("prime pool is empty");
  if (n == 0) throw invalid_input("substitutions need at least one variable");
  std::vector<SubstitutionPair> out;
  out.reserve(l);
  for (uint64_t i = 0; i < l; ++i) {
    SubstitutionPair pair;
    pair.p = pool[uniform_below(rng, pool.size())];
    pair.s.resize(n);
    for (auto& v : pair.s) v = uniform_below(rng, pair.p);
    if (std::find(out.begin(), out.end(), pair) == out.end()) {
      out.push_back(std::move(pair));
    }
  }
  return out;
}

BlackBox make_univariate_oracle(BlackBox& inner, std::vector<uint64_t> s) {
  if (s.size() != inner.arity()) throw invalid_input("substitution vector has wrong arity");
  return BlackBox(1, [&inner, s = std::move(s)](std::span<const FieldElem> point,
                                                const FieldCtx& ctx) {
    std::vector<FieldElem> lifted;
    lifted.reserve(s.size());
    for (uint64_t e : s) lifted.push_back(ctx.pow(point[0], e));
    return inner.eval(lifted, ctx);
  });
}

namespace {

uint64_t substituted_residue(const MultiTerm& t, uint64_t p, std::span<const uint64_t> s) {
  uint64_t r = 0;
  for (size_t k = 0; k < s.size(); ++k) {
    r = (r + mul_mod(t.exps[k] % p, s[k] % p, p)) % p;
  }
  return r;
}

}  // namespace

uint64_t collision_count(const MultiPoly& f, uint64_t p, std::span<const uint64_t> s) {
  if (p == 0) throw invalid_input("substitution prime must be positive");
  if (s.size() != f.nvars()) throw invalid_input("substitution vector has wrong arity");
  std::unordered_map<uint64_t, uint64_t> bucket;
  for (const auto& t : f.terms()) ++bucket[substituted_residue(t, p, s)];
  uint64_t c = 0;
  for (const auto& t : f.terms()) {
    if (bucket[substituted_residue(t, p, s)] >= 2) ++c;
  }
  return c;
}

namespace {

// Residue -> (occurrences, index of last occurrence) over a sparse
// univariate polynomial's exponents.
std::unordered_map<uint64_t, std::pair<uint64_t, size_t>> residue_buckets(const UniPoly& h,
                                                                          uint64_t p) {
  std::unordered_map<uint64_t, std::pair<uint64_t, size_t>> m;
  m.reserve(h.term_count());
  const auto& ts = h.terms();
  for (size_t i = 0; i < ts.size(); ++i) {
    auto& slot = m[static_cast<uint64_t>(ts[i].exp % p)];
    ++slot.first;
    slot.second = i;
  }
  return m;
}

}  // namespace

MultiPoly ts_terms(const UniPoly& f_mod, const UniPoly& f_s, std::span<const UniPoly> g,
                   uint64_t p, std::span<const uint64_t> s, uint64_t D, const FieldCtx& F) {
  if (p == 0) throw invalid_input("substitution prime must be positive");
  if (s.size() != g.size()) throw invalid_input("one shifted image per variable required");
  unsigned n = static_cast<unsigned>(s.size());
  if (n == 0) throw invalid_input("at least one variable required");

  auto base_buckets = residue_buckets(f_s, p);
  std::vector<std::unordered_map<uint64_t, std::pair<uint64_t, size_t>>> shift_buckets;
  shift_buckets.reserve(n);
  for (const UniPoly& gk : g) shift_buckets.push_back(residue_buckets(gk, p));

  std::vector<MultiTerm> found;
  for (const auto& cand : f_mod.terms()) {
    uint64_t r = static_cast<uint64_t>(cand.exp % p);
    // The residue class must pick out exactly one term of the plain image,
    // with the same coefficient.
    auto it = base_buckets.find(r);
    if (it == base_buckets.end() || it->second.first != 1) continue;
    const UniTerm& base = f_s.terms()[it->second.second];
    if (!(base.coeff == cand.coeff)) continue;

    // Same in every shifted image; the exponent offsets divided by p are the
    // candidate multivariate exponents.
    std::vector<bigint> e(n);
    bool ok = true;
    for (unsigned k = 0; k < n && ok; ++k) {
      auto jt = shift_buckets[k].find(r);
      if (jt == shift_buckets[k].end() || jt->second.first != 1) {
        ok = false;
        break;
      }
      const UniTerm& shifted = g[k].terms()[jt->second.second];
      if (!(shifted.coeff == cand.coeff)) {
        ok = false;
        break;
      }
      bigint diff = shifted.exp - base.exp;
      if (diff < 0 || diff % p != 0) {
        ok = false;
        break;
      }
      e[k] = diff / p;
    }
    if (!ok) continue;

    // The exponents must reproduce the plain image's exponent and respect the
    // total-degree bound.
    bigint rebuilt = 0, total = 0;
    for (unsigned k = 0; k < n; ++k) {
      rebuilt += e[k] * s[k];
      total += e[k];
    }
    if (rebuilt != base.exp || total > D) continue;

    MultiTerm t;
    t.coeff = cand.coeff;
    t.exps.resize(n);
    for (unsigned k = 0; k < n; ++k) t.exps[k] = static_cast<uint64_t>(e[k]);
    found.push_back(std::move(t));
  }
  return MultiPoly::from_terms(n, std::move(found), F);
}

namespace {

bigint degree_bound_for(std::span<const uint64_t> s, uint64_t D) {
  uint64_t mx = 0;
  for (uint64_t v : s) mx = std::max(mx, v);
  return bigint(mx) * D;
}

}  // namespace

std::optional<MultiPoly> half_poly(BlackBox& bf, const MultiPoly& f_star, uint64_t T,
                                   uint64_t T1, uint64_t D, double nu,
                                   UnivariateInterpolator& interp, std::mt19937_64& rng,
                                   const FieldCtx& F, RoundStats* stats) {
  if (T1 < 1 || T1 > T) throw invalid_input("residual bound must lie in [1, T]");
  if (nu <= 0 || nu >= 1) throw invalid_input("failure tolerance must lie in (0, 1)");
  if (f_star.nvars() != bf.arity()) throw invalid_input("partial result has wrong arity");
  unsigned n = bf.arity();

  RoundStats local;
  RoundStats& rs = stats ? *stats : local;
  rs.T1 = T1;
  rs.term_bound_each = T;

  std::vector<uint64_t> pool = prime_pool(T1, D);
  uint64_t l =
      static_cast<uint64_t>(std::ceil(32.0 * std::log(static_cast<double>(T1) / nu)));
  rs.drawn = l;
  std::vector<SubstitutionPair> pairs = sample_substitutions(pool, n, l, rng);
  rs.distinct_pairs = pairs.size();

  try {
    // Interpolate the residual's image under every substitution; the pair
    // whose reduced image keeps the most terms has the fewest collisions.
    std::vector<UniPoly> residual(pairs.size());
    std::vector<UniPoly> reduced(pairs.size());
    for (size_t i = 0; i < pairs.size(); ++i) {
      BlackBox oracle = make_univariate_oracle(bf, pairs[i].s);
      UniPoly image = interp.interpolate(oracle, T, degree_bound_for(pairs[i].s, D), F);
      residual[i] = sub(image, kronecker_sub(f_star, pairs[i].s, F), F);
      reduced[i] = mod_cyclic(residual[i], pairs[i].p, F);
    }
    size_t best = 0;
    for (size_t i = 1; i < pairs.size(); ++i) {
      if (reduced[i].term_count() > reduced[best].term_count()) best = i;
    }
    rs.selected_prime = pairs[best].p;
    rs.best_residual_terms = reduced[best].term_count();
    if (reduced[best].term_count() > T1) {
      rs.failed = true;
      return std::nullopt;
    }

    // Interpolate the n shifted images of the selected substitution.
    const SubstitutionPair& sel = pairs[best];
    std::vector<UniPoly> star_shifted = poly_subs(f_star, sel.s, sel.p, F);
    std::vector<UniPoly> g(n);
    for (unsigned k = 0; k < n; ++k) {
      std::vector<uint64_t> shifted = sel.s;
      shifted[k] += sel.p;
      BlackBox oracle = make_univariate_oracle(bf, shifted);
      UniPoly image = interp.interpolate(oracle, T, degree_bound_for(shifted, D), F);
      g[k] = sub(image, star_shifted[k], F);
    }
    rs.shifted_jobs = n;

    return ts_terms(reduced[best], residual[best], g, sel.p, sel.s, D, F);
  } catch (const interp_failure&) {
    rs.failed = true;
    return std::nullopt;
  }
}

std::optional<MultiPoly> mul_poly_si(BlackBox& bf, uint64_t T, uint64_t D, double mu,
                                     UnivariateInterpolator& interp, std::mt19937_64& rng,
                                     const FieldCtx& F, DriverStats* stats) {
  unsigned n = bf.arity();
  MultiPoly h(n);
  uint64_t start_queries = bf.queries();
  ReductionConfig cfg = ReductionConfig::make(T, D, mu);
  while (cfg.T1 > 0) {
    RoundStats rs;
    std::optional<MultiPoly> part =
        half_poly(bf, h, T, cfg.T1, D, cfg.nu, interp, rng, F, &rs);
    if (stats) {
      stats->rounds.push_back(rs);
      stats->oracle_queries = bf.queries() - start_queries;
    }
    if (!part) return std::nullopt;
    h = add(h, *part, F);
    cfg.halve();
  }
  if (stats) stats->oracle_queries = bf.queries() - start_queries;
  // A result that breaks the stated bounds cannot be the target polynomial.
  if (h.term_count() > T || h.total_degree() > D) return std::nullopt;
  return h;
}

}  // namespace rkron
