#ifndef BURES_CLI_HPP
#define BURES_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace bures::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInvalid = 2;

/// Closed-form metric vs finite-difference oracle over random interior points.
struct CheckResult {
  int n = 0;
  int points = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  double max_abs_deviation = 0.0;
  double max_rel_deviation = 0.0;  ///< over entries with |oracle| >= tolerance
  double max_cross_term = 0.0;     ///< largest oracle theta/coset cross entry
  int failing_entries = 0;
  bool pass = false;
};

/// An entry passes when |closed - oracle| <= max(tol, 10 tol |oracle|).
CheckResult check_metric(int n, int points, std::uint64_t seed, double tolerance, unsigned threads = 0);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bures::cli

#endif  // BURES_CLI_HPP
