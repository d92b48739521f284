#pragma once

#include <iosfwd>
#include <string>

namespace rkron {

struct SelftestOptions {
  std::string suite;  // run only the named suite when nonempty
  uint64_t seed = 1;
  bool list = false;          // print suite names instead of running
  bool inject_fault = false;  // adds a deliberately failing suite (harness test)
};

/// Runs the library's property suites at fixed seeds; prints one line per
/// suite.  Returns 0 when every executed suite passed.
int run_selftest(const SelftestOptions& opt, std::ostream& out);

}  // namespace rkron
