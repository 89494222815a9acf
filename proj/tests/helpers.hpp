#ifndef SPINGEO_TESTS_HELPERS_HPP
#define SPINGEO_TESTS_HELPERS_HPP

#include <spingeo/types.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include <sys/wait.h>

namespace testutil {

inline double max_diff(const spingeo::Mat4c& a, const spingeo::Mat4c& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline double max_diff(const spingeo::Mat3& a, const spingeo::Mat3& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline spingeo::Vec3 sorted_magnitudes(spingeo::Vec3 v) {
  v = v.cwiseAbs();
  std::sort(v.data(), v.data() + 3, std::greater<double>());
  return v;
}

/// Singular values by the trigonometric solution of the characteristic cubic
/// of c^T c. Independent of the Jacobi sweep, so it can arbitrate it.
inline spingeo::Vec3 spectral_singular_values(const spingeo::Mat3& c) {
  const spingeo::Mat3 b = c.transpose() * c;
  const double q = b.trace() / 3.0;
  const double p1 =
      b(0, 1) * b(0, 1) + b(0, 2) * b(0, 2) + b(1, 2) * b(1, 2);
  const double p2 = (b(0, 0) - q) * (b(0, 0) - q) + (b(1, 1) - q) * (b(1, 1) - q) +
                    (b(2, 2) - q) * (b(2, 2) - q) + 2.0 * p1;
  spingeo::Vec3 eig;
  if (p2 <= 0.0) {
    eig.setConstant(q);
  } else {
    const double p = std::sqrt(p2 / 6.0);
    const spingeo::Mat3 bt = (b - q * spingeo::Mat3::Identity()) / p;
    const double r = std::clamp(bt.determinant() / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    eig(0) = q + 2.0 * p * std::cos(phi);
    eig(2) = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    eig(1) = 3.0 * q - eig(0) - eig(2);
  }
  for (int i = 0; i < 3; ++i) eig(i) = std::sqrt(std::max(eig(i), 0.0));
  std::sort(eig.data(), eig.data() + 3, std::greater<double>());
  return eig;
}

struct CliResult {
  int exit_code = -1;
  std::string output;  ///< stdout and stderr interleaved
};

/// Run the installed binary with the given argument string.
inline CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(SPINGEO_CLI_PATH) + " " + args + " 2>&1";
  CliResult result;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return result;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) result.output.append(buf, n);
  const int status = ::pclose(pipe);
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  return result;
}

/// Value following "key = " on its own line of a report, as text.
inline std::string report_value(const std::string& text, const std::string& key) {
  const std::string needle = key + " = ";
  const auto pos = text.find(needle);
  if (pos == std::string::npos) return {};
  const auto start = pos + needle.size();
  return text.substr(start, text.find('\n', start) - start);
}

}  // namespace testutil

#endif
