#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rkron/kronecker.hpp"

namespace rkron {

/// One benchmark measurement.  `success` is 1 when the recovered polynomial
/// equals the generated one, 0 otherwise (including detected failures).
struct BenchRecord {
  unsigned n = 0;
  uint64_t T = 0;
  uint64_t D = 0;
  uint64_t q = 0;
  std::string backend;
  uint64_t seed = 0;
  uint64_t trial = 0;
  double seconds = 0;
  uint64_t queries = 0;
  bool success = false;
};

struct BenchOptions {
  char vary = 'n';  // 'n', 'T', or 'D'
  std::vector<uint64_t> values;
  unsigned n = 4;
  uint64_t T = 8;
  uint64_t D = 16;
  uint64_t q = 30000000001ULL;
  std::optional<uint64_t> omega;  // validated primitive element, if supplied
  uint64_t trials = 5;
  uint64_t seed = 1;
  double mu = 0.25;
  UnivariateInterpolator::Backend backend = UnivariateInterpolator::Backend::dlog;
};

/// Runs the sweep and returns per-trial records (no averages).
std::vector<BenchRecord> run_bench(const BenchOptions& opt);

/// CSV with header `n,T,D,q,backend,seed,trial,seconds,queries,success`,
/// per-trial rows, and one `avg` row after each parameter point.
void write_csv(std::ostream& out, const std::vector<BenchRecord>& records, uint64_t trials);

}  // namespace rkron
