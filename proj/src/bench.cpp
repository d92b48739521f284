#include "rkron/bench.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>

namespace rkron {

namespace {

const char* backend_name(UnivariateInterpolator::Backend b) {
  return b == UnivariateInterpolator::Backend::exhaustive ? "exhaustive" : "dlog";
}

}  // namespace

std::vector<BenchRecord> run_bench(const BenchOptions& opt) {
  if (opt.values.empty()) throw invalid_input("benchmark needs at least one parameter value");
  if (opt.trials < 1) throw invalid_input("benchmark needs at least one trial");
  FieldCtx base = FieldCtx::prime_field(opt.q);
  if (opt.omega) {
    base = base.with_primitive(base.from_residue(*opt.omega));
  } else {
    std::mt19937_64 frng(splitmix64(opt.seed) ^ 0x8f1bbcdcULL);
    base = base.with_primitive(find_primitive(base, frng));
  }

  std::vector<BenchRecord> records;
  for (size_t pt = 0; pt < opt.values.size(); ++pt) {
    unsigned n = opt.n;
    uint64_t T = opt.T, D = opt.D;
    switch (opt.vary) {
      case 'n': n = static_cast<unsigned>(opt.values[pt]); break;
      case 'T': T = opt.values[pt]; break;
      case 'D': D = opt.values[pt]; break;
      default: throw invalid_input("benchmark can vary only n, T, or D");
    }
    for (uint64_t trial = 0; trial < opt.trials; ++trial) {
      uint64_t seed = splitmix64(splitmix64(opt.seed + 0x1000003ULL * pt) + trial);
      MultiPoly truth = random_poly(base, n, T, D, seed);
      BlackBox box = make_poly_blackbox(truth, base);
      UnivariateInterpolator interp(opt.backend, seed);
      std::mt19937_64 rng(splitmix64(seed ^ 0xb5297a4dULL));

      auto t0 = std::chrono::steady_clock::now();
      std::optional<MultiPoly> got =
          mul_poly_si(box, T, D, opt.mu, interp, rng, base);
      auto t1 = std::chrono::steady_clock::now();

      BenchRecord r;
      r.n = n;
      r.T = T;
      r.D = D;
      r.q = opt.q;
      r.backend = backend_name(opt.backend);
      r.seed = seed;
      r.trial = trial;
      r.seconds = std::chrono::duration<double>(t1 - t0).count();
      r.queries = box.queries();
      r.success = got.has_value() && *got == truth;
      records.push_back(std::move(r));
    }
  }
  return records;
}

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records, uint64_t trials) {
  out << "n,T,D,q,backend,seed,trial,seconds,queries,success\n";
  char buf[64];
  auto fixed6 = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return std::string(buf);
  };
  for (size_t i = 0; i < records.size(); ++i) {
    const BenchRecord& r = records[i];
    out << r.n << ',' << r.T << ',' << r.D << ',' << r.q << ',' << r.backend << ',' << r.seed
        << ',' << r.trial << ',' << fixed6(r.seconds) << ',' << r.queries << ','
        << (r.success ? 1 : 0) << '\n';
    if ((i + 1) % trials == 0) {
      // Averages over the point that just finished.
      double sec = 0, qs = 0, ok = 0;
      for (size_t j = i + 1 - trials; j <= i; ++j) {
        sec += records[j].seconds;
        qs += static_cast<double>(records[j].queries);
        ok += records[j].success ? 1 : 0;
      }
      std::snprintf(buf, sizeof buf, "%.6f,%.1f,%.4f", sec / trials, qs / trials,
                    ok / trials);
      out << r.n << ',' << r.T << ',' << r.D << ',' << r.q << ',' << r.backend << ','
          << r.seed << ",avg," << buf << '\n';
    }
  }
}

}  // namespace rkron
