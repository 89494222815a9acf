#ifndef SPINGEO_VERIFY_HPP
#define SPINGEO_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace spingeo {

struct VerifyOptions {
  bool quick = false;          ///< smaller case counts for a fast smoke run
  std::uint64_t seed = 12345;  ///< RNG seed; fixed default keeps runs reproducible
  /// Debug hook: perturb the closed-form output by 1e-3 so the oracle
  /// comparison must fail. Exercises the failure path end to end.
  bool inject_fault = false;
};

struct CheckResult {
  std::string module;
  std::string property;
  std::string detail;  ///< case counts and worst residuals, or the failing inputs
  bool passed = false;
};

/// Cross-checks between independent computation routes: closed forms against
/// the RK4 integrator, the Jacobi SVD against a spectral oracle, octahedron
/// membership against the partial-transpose criterion, and the angle-grid
/// equivalence residuals.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace spingeo

#endif
