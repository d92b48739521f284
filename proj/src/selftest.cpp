#include "rkron/selftest.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <ostream>

#include "rkron/bench.hpp"
#include "rkron/kronecker.hpp"
#include "rkron/polyio.hpp"

#include <sstream>

namespace rkron {

namespace {

struct Checker {
  uint64_t checks = 0;
  uint64_t failed = 0;
  std::string first_failure;

  void require(bool cond, const char* what) {
    ++checks;
    if (!cond && failed++ == 0) first_failure = what;
  }
};

FieldCtx with_found_primitive(FieldCtx f, uint64_t seed) {
  std::mt19937_64 rng(splitmix64(seed));
  return f.with_primitive(find_primitive(f, rng));
}

// Caps a drawn term count at the number of monomials that exist.
uint64_t clamp_terms(uint64_t t, unsigned n, uint64_t D) {
  bigint cap = binomial(D + n, n);
  return cap < t ? static_cast<uint64_t>(cap) : t;
}

void field_arith(Checker& ck, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<FieldCtx> fields;
  fields.push_back(FieldCtx::prime_field(7));
  fields.push_back(FieldCtx::prime_field(101));
  fields.push_back(FieldCtx::prime_field(30000000001ULL));
  fields.push_back(FieldCtx::extension_field(2, 4, default_modulus(2, 4)));
  fields.push_back(FieldCtx::extension_field(3, 2, default_modulus(3, 2)));
  for (const FieldCtx& F : fields) {
    for (int i = 0; i < 200; ++i) {
      FieldElem a = F.random_element(rng);
      FieldElem b = F.random_nonzero(rng);
      FieldElem c = F.random_element(rng);
      ck.require(F.div(F.mul(a, b), b) == a, "mul/div roundtrip");
      ck.require(F.sub(F.add(a, b), b) == a, "add/sub roundtrip");
      ck.require(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)), "distributivity");
    }
    for (int i = 0; i < 20; ++i) {
      FieldElem a = F.random_nonzero(rng);
      ck.require(F.is_one(F.pow(a, F.order())), "multiplicative order divides q^m-1");
    }
  }
}

void field_structure(Checker& ck, uint64_t seed) {
  std::mt19937_64 rng(seed);
  ck.require(default_modulus(2, 2) == std::vector<uint64_t>({1, 1}),
             "unique quadratic modulus over F_2");
  for (auto [q, m] : {std::pair<uint64_t, unsigned>{2, 6}, {5, 3}, {101, 2}}) {
    std::vector<uint64_t> mod = find_irreducible(q, m, rng);
    FieldCtx F = FieldCtx::extension_field(q, m, mod);  // revalidates irreducibility
    FieldElem w = find_primitive(F, rng);
    // Distinct powers certify the order.
    std::vector<FieldElem> seen;
    FieldElem x = F.one();
    uint64_t upto = std::min<uint64_t>(static_cast<uint64_t>(F.order()), 400);
    bool distinct = true;
    for (uint64_t i = 0; i < upto; ++i) {
      for (const auto& s : seen) distinct = distinct && !(s == x);
      seen.push_back(x);
      x = F.mul(x, w);
    }
    ck.require(distinct, "primitive element powers are distinct");
  }
  bool rejected = false;
  try {
    find_irreducible(3, 1, rng);
  } catch (const invalid_input&) {
    rejected = true;
  }
  ck.require(rejected, "degree-1 modulus search is rejected");
}

// Reference substitution: evaluate term-by-term into a map keyed by reduced
// exponent, entirely independent of the library's merge logic.
UniPoly brute_reduced_image(const MultiPoly& f, std::span<const uint64_t> s, uint64_t p,
                            const FieldCtx& F) {
  std::map<bigint, FieldElem> acc;
  for (const auto& t : f.terms()) {
    bigint e = 0;
    for (size_t k = 0; k < s.size(); ++k) e += bigint(t.exps[k]) * s[k];
    e %= p;
    auto [it, fresh] = acc.try_emplace(e, t.coeff);
    if (!fresh) it->second = F.add(it->second, t.coeff);
  }
  std::vector<UniTerm> ts;
  for (auto& [e, c] : acc) ts.push_back({c, e});
  return UniPoly::from_terms(std::move(ts), F);
}

void poly_identities(Checker& ck, uint64_t seed) {
  std::mt19937_64 rng(seed);
  FieldCtx F = with_found_primitive(FieldCtx::prime_field(101), seed);
  for (int trial = 0; trial < 60; ++trial) {
    unsigned n = 1 + static_cast<unsigned>(uniform_below(rng, 3));
    uint64_t D = 1 + uniform_below(rng, 10);
    uint64_t t = clamp_terms(1 + uniform_below(rng, 8), n, D);
    MultiPoly f = random_poly(F, n, t, D, rng());
    std::vector<uint64_t> s(n);
    for (auto& v : s) v = uniform_below(rng, 50);
    uint64_t p = 2 + uniform_below(rng, 49);

    UniPoly ks = kronecker_sub(f, s, F);
    FieldElem theta = F.random_element(rng);
    std::vector<FieldElem> point;
    for (uint64_t sv : s) point.push_back(F.pow(theta, sv));
    ck.require(eval_uni(ks, theta, F) == eval_multi(f, point, F),
               "kronecker image evaluates like the source");

    ck.require(mod_cyclic(ks, p, F) == brute_reduced_image(f, s, p, F),
               "cyclic reduction matches the reference");

    std::vector<UniPoly> hs = poly_subs(f, s, p, F);
    for (unsigned k = 0; k < n; ++k) {
      std::vector<uint64_t> shifted = s;
      shifted[k] += p;
      ck.require(hs[k] == kronecker_sub(f, shifted, F),
                 "shifted image equals shifted substitution");
    }

    ck.require(sub(add(f, f, F), f, F) == f, "polynomial add/sub roundtrip");
  }
}

void term_recovery(Checker& ck, uint64_t seed) {
  std::mt19937_64 rng(seed);
  FieldCtx F = FieldCtx::prime_field(101);
  for (int trial = 0; trial < 80; ++trial) {
    unsigned n = 1 + static_cast<unsigned>(uniform_below(rng, 3));
    uint64_t D = 1 + uniform_below(rng, 8);
    uint64_t t = clamp_terms(1 + uniform_below(rng, 6), n, D);
    MultiPoly f = random_poly(F, n, t, D, rng());
    std::vector<uint64_t> pool = prime_pool(t, D);
    uint64_t p = pool[uniform_below(rng, std::min<size_t>(pool.size(), 4))];
    std::vector<uint64_t> s(n);
    for (auto& v : s) v = uniform_below(rng, p);

    UniPoly fs = kronecker_sub(f, s, F);
    UniPoly fmod = mod_cyclic(fs, p, F);
    std::vector<UniPoly> g = poly_subs(f, s, p, F);
    MultiPoly rec = ts_terms(fmod, fs, g, p, s, D, F);

    // Every non-colliding term of f must be recovered verbatim.
    std::map<uint64_t, uint64_t> buckets;
    std::vector<uint64_t> residues;
    for (const auto& term : f.terms()) {
      uint64_t r = 0;
      for (size_t k = 0; k < s.size(); ++k) r = (r + term.exps[k] % p * (s[k] % p)) % p;
      residues.push_back(r);
      ++buckets[r];
    }
    for (size_t i = 0; i < f.terms().size(); ++i) {
      if (buckets[residues[i]] != 1) continue;
      const auto& want = f.terms()[i];
      bool present = false;
      for (const auto& got : rec.terms()) {
        present = present || (got.exps == want.exps && got.coeff == want.coeff);
      }
      ck.require(present, "non-colliding term recovered");
    }
  }
}

void collision_rate(Checker& ck, uint64_t seed) {
  std::mt19937_64 rng(seed);
  FieldCtx F = FieldCtx::prime_field(101);
  MultiPoly f = random_poly(F, 3, 8, 16, 12345);
  std::vector<uint64_t> pool = prime_pool(8, 16);
  uint64_t hits = 0, draws = 400;
  for (uint64_t i = 0; i < draws; ++i) {
    uint64_t p = pool[uniform_below(rng, pool.size())];
    std::vector<uint64_t> s(3);
    for (auto& v : s) v = uniform_below(rng, p);
    // Does the first term share its reduced exponent with another?
    std::vector<uint64_t> r;
    for (const auto& term : f.terms()) {
      uint64_t acc = 0;
      for (size_t k = 0; k < s.size(); ++k) acc = (acc + term.exps[k] % p * (s[k] % p)) % p;
      r.push_back(acc);
    }
    for (size_t j = 1; j < r.size(); ++j) {
      if (r[j] == r[0]) {
        ++hits;
        break;
      }
    }
  }
  ck.require(static_cast<double>(hits) / draws <= 0.0825,
             "fixed-term collision frequency within tolerance");
}

void substitution_selection(Checker& ck, uint64_t seed) {
  std::mt19937_64 rng(seed);
  FieldCtx F = FieldCtx::prime_field(101);
  MultiPoly f = random_poly(F, 3, 8, 16, 777);
  uint64_t t = f.term_count();
  double mu = 0.1;
  uint64_t l = static_cast<uint64_t>(std::ceil(32.0 * std::log(static_cast<double>(t) / mu)));
  std::vector<uint64_t> pool = prime_pool(t, 16);
  uint64_t ok = 0, trials = 60;
  for (uint64_t trial = 0; trial < trials; ++trial) {
    auto pairs = sample_substitutions(pool, 3, l, rng);
    size_t best = 0;
    uint64_t best_terms = 0;
    for (size_t i = 0; i < pairs.size(); ++i) {
      uint64_t terms =
          mod_cyclic(kronecker_sub(f, pairs[i].s, F), pairs[i].p, F).term_count();
      if (terms > best_terms) {
        best_terms = terms;
        best = i;
      }
    }
    uint64_t good = t - collision_count(f, pairs[best].p, pairs[best].s);
    if (good >= (5 * t + 7) / 8) ++ok;
  }
  ck.require(ok >= trials * 5 / 6, "selected substitution keeps 5/8 of terms");
}

void collision_monotonicity(Checker& ck, uint64_t seed) {
  std::mt19937_64 rng(seed);
  FieldCtx F = FieldCtx::prime_field(101);
  std::vector<uint64_t> primes = primes_at_least(2, 40);
  for (int trial = 0; trial < 60; ++trial) {
    unsigned n = 1 + static_cast<unsigned>(uniform_below(rng, 3));
    uint64_t D = 1 + uniform_below(rng, 10);
    uint64_t t = clamp_terms(1 + uniform_below(rng, 8), n, D);
    MultiPoly f = random_poly(F, n, t, D, rng());
    auto draw = [&] {
      SubstitutionPair pr;
      pr.p = primes[uniform_below(rng, primes.size())];
      pr.s.resize(n);
      for (auto& v : pr.s) v = uniform_below(rng, pr.p);
      return pr;
    };
    SubstitutionPair u = draw(), v = draw();
    uint64_t tu = mod_cyclic(kronecker_sub(f, u.s, F), u.p, F).term_count();
    uint64_t tv = mod_cyclic(kronecker_sub(f, v.s, F), v.p, F).term_count();
    uint64_t cu = collision_count(f, u.p, u.s);
    uint64_t cv = collision_count(f, v.p, v.s);
    if (tu >= tv) {
      ck.require(cu <= 2 * cv, "larger reduced image never doubles collisions");
    }
  }
}

void univariate_exact(Checker& ck, uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (uint64_t q : {uint64_t(101), uint64_t(2)}) {
    FieldCtx base = with_found_primitive(FieldCtx::prime_field(q), seed ^ q);
    for (int trial = 0; trial < 20; ++trial) {
      uint64_t t = uniform_below(rng, 9);
      uint64_t Dp = 1 + uniform_below(rng, 120);
      t = std::min(t, Dp + 1);
      MultiPoly truth = random_poly(base, 1, t, Dp, rng());
      for (auto backend : {UnivariateInterpolator::Backend::exhaustive,
                           UnivariateInterpolator::Backend::dlog}) {
        BlackBox box = make_poly_blackbox(truth, base);
        UnivariateInterpolator interp(backend, seed + trial);
        UniPoly got = interp.interpolate(box, std::max<uint64_t>(t, 1), Dp, base);
        UniPoly want = kronecker_sub(truth, std::vector<uint64_t>{1}, base);
        ck.require(got == want, "univariate recovery is exact");
        ck.require(box.queries() == 2 * std::max<uint64_t>(t, 1),
                   "query count is twice the term bound");
      }
    }
  }
}

void backend_agreement(Checker& ck, uint64_t seed) {
  std::mt19937_64 rng(seed);
  FieldCtx base = FieldCtx::prime_field(30000000001ULL);
  base = base.with_primitive(base.from_residue(29));
  for (int trial = 0; trial < 12; ++trial) {
    uint64_t t = 1 + uniform_below(rng, 10);
    uint64_t Dp = 10 + uniform_below(rng, 2000);
    MultiPoly truth = random_poly(base, 1, t, Dp, rng());
    BlackBox b1 = make_poly_blackbox(truth, base);
    BlackBox b2 = make_poly_blackbox(truth, base);
    UniPoly u1 = bot_exhaustive(b1, t, Dp, base);
    UniPoly u2 = bot_dlog(b2, t, Dp, base);
    ck.require(u1 == u2, "both exponent back-ends agree");
  }
}

void query_accounting(Checker& ck, uint64_t seed) {
  FieldCtx base = FieldCtx::prime_field(30000000001ULL);
  base = base.with_primitive(base.from_residue(29));
  MultiPoly truth = random_poly(base, 3, 6, 12, 99);
  BlackBox box = make_poly_blackbox(truth, base);
  UnivariateInterpolator interp(UnivariateInterpolator::Backend::dlog, seed);
  std::mt19937_64 rng(seed);
  DriverStats stats;
  auto got = mul_poly_si(box, 6, 12, 0.25, interp, rng, base, &stats);
  ck.require(got.has_value() && *got == truth, "driver recovers the generated polynomial");
  uint64_t predicted = 0;
  for (const auto& r : stats.rounds) {
    predicted += (r.distinct_pairs + r.shifted_jobs) * 2 * r.term_bound_each;
  }
  ck.require(stats.oracle_queries == predicted, "queries equal jobs times probes per job");
  ck.require(box.queries() == stats.oracle_queries, "box counter matches driver stats");
}

void end_to_end(Checker& ck, uint64_t seed) {
  FieldCtx F7 = with_found_primitive(FieldCtx::prime_field(7), seed);
  std::vector<MultiTerm> ts;
  ts.push_back({F7.one(), {1, 1}});
  ts.push_back({F7.one(), {2, 0}});
  MultiPoly f = MultiPoly::from_terms(2, std::move(ts), F7);
  uint64_t ok = 0, trials = 30;
  for (uint64_t trial = 0; trial < trials; ++trial) {
    BlackBox box = make_poly_blackbox(f, F7);
    UnivariateInterpolator interp(UnivariateInterpolator::Backend::dlog, seed + trial);
    std::mt19937_64 rng(splitmix64(seed) + trial);
    auto got = mul_poly_si(box, 2, 2, 0.25, interp, rng, F7);
    if (got && *got == f) ++ok;
  }
  ck.require(ok * 4 >= trials * 3, "small driver instance succeeds at the advertised rate");

  // The zero polynomial is recovered without any term-recovery work.
  BlackBox zero_box(3, [](std::span<const FieldElem>, const FieldCtx& ctx) {
    return ctx.zero();
  });
  UnivariateInterpolator interp(UnivariateInterpolator::Backend::dlog, seed);
  std::mt19937_64 rng(seed);
  FieldCtx F101 = with_found_primitive(FieldCtx::prime_field(101), seed + 5);
  auto got = mul_poly_si(zero_box, 1, 3, 0.25, interp, rng, F101);
  ck.require(got.has_value() && got->is_zero(), "zero oracle yields the zero polynomial");
}

void io_roundtrip(Checker& ck, uint64_t seed) {
  std::mt19937_64 rng(seed);
  FieldCtx prime = FieldCtx::prime_field(101);
  FieldCtx ext = FieldCtx::extension_field(3, 2, default_modulus(3, 2));
  for (const FieldCtx& F : {prime, ext}) {
    for (int trial = 0; trial < 10; ++trial) {
      unsigned n = 2 + trial % 3;
      uint64_t D = 1 + uniform_below(rng, 9);
      uint64_t t = clamp_terms(1 + uniform_below(rng, 6), n, D);
      MultiPoly f = random_poly(F, n, t, D, rng());
      std::stringstream ss;
      write_poly(ss, f, F);
      PolyFile back = read_poly(ss);
      ck.require(back.ctx.same_field(F), "field header round-trips");
      ck.require(back.poly == f, "terms round-trip");
    }
  }
}

}  // namespace

int run_selftest(const SelftestOptions& opt, std::ostream& out) {
  using Suite = std::function<void(Checker&, uint64_t)>;
  std::vector<std::pair<std::string, Suite>> suites = {
      {"field-arith", field_arith},
      {"field-structure", field_structure},
      {"poly-identities", poly_identities},
      {"term-recovery", term_recovery},
      {"collision-rate", collision_rate},
      {"substitution-selection", substitution_selection},
      {"collision-monotonicity", collision_monotonicity},
      {"univariate-exact", univariate_exact},
      {"backend-agreement", backend_agreement},
      {"query-accounting", query_accounting},
      {"end-to-end", end_to_end},
      {"io-roundtrip", io_roundtrip},
  };
  if (opt.inject_fault) {
    suites.push_back({"injected-fault", [](Checker& ck, uint64_t) {
                        ck.require(false, "deliberate failure for harness checks");
                      }});
  }
  if (opt.list) {
    for (const auto& [name, fn] : suites) out << name << '\n';
    return 0;
  }
  bool any = false;
  int rc = 0;
  for (size_t i = 0; i < suites.size(); ++i) {
    const auto& [name, fn] = suites[i];
    if (!opt.suite.empty() && opt.suite != name) continue;
    any = true;
    Checker ck;
    std::string verdict;
    try {
      fn(ck, splitmix64(opt.seed + i));
      verdict = ck.failed == 0 ? "PASS" : "FAIL (" + ck.first_failure + ")";
    } catch (const std::exception& e) {
      ck.failed++;
      verdict = std::string("FAIL (exception: ") + e.what() + ")";
    }
    out << name << ": " << verdict << " [" << ck.checks << " checks]\n";
    if (ck.failed) rc = 1;
  }
  if (!any) {
    out << "no such suite: " << opt.suite << '\n';
    return 1;
  }
  return rc;
}

}  // namespace rkron
