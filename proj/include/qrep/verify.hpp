#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qrep {

// Outcome of one property check over a batch of instances.
struct Check {
  std::string name;
  int passed = 0;
  int total = 0;
  int required = 0;    // passes needed; total unless a Monte-Carlo allowance applies
  double worst = 0;    // largest residual seen, 0 when not applicable
  std::string note;
  bool ok() const { return total > 0 && passed >= required; }
};

struct SuiteReport {
  std::string suite;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<Check> checks;
  bool ok() const;
};

// Suites: "reflection", "cyclic", "operator", "builders", "all".
// Throws PreconditionError for an unknown name or trials < 1.
std::vector<std::string> suite_names();
std::vector<SuiteReport> run_suite(const std::string& suite, int trials, std::uint64_t seed);

// The individual checks, also used by the acceptance driver.
Check check_operator_commutant(int kmax, std::uint64_t seed);
Check check_cn_exhaustive();
Check check_cn_case_lists();
Check check_cn_dim_bound(int trials, std::uint64_t seed);
Check check_reflection_end_iso(int trials, std::uint64_t seed, bool sink);
Check check_round_trip(int trials, std::uint64_t seed);
Check check_dual_formula(int trials, std::uint64_t seed);
Check check_builders_jordan(int kmax, std::uint64_t seed);
Check check_builders_decomposable(std::uint64_t seed);
Check check_shift_rank_one_kernel();
Check check_density_examples();
Check check_phi(int trials, std::uint64_t seed);
Check check_mk_unbounded();
Check check_orientations(int nmax);

}  // namespace qrep
