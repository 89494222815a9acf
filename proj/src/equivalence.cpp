#include <spingeo/equivalence.hpp>

#include <spingeo/closed_form.hpp>
#include <spingeo/geometry.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace spingeo {

namespace {

constexpr double kStructTol = 1e-9;
constexpr double kEquivalenceTol = 1e-9;

Vec3 sorted_magnitudes(const Mat3& c) {
  Vec3 m = svd3(c).values.cwiseAbs();
  std::sort(m.data(), m.data() + 3, std::greater<double>());
  return m;
}

template <typename Probe>
double max_grid_difference(const Mat3& c0, int grid, Probe&& probe) {
  if (grid < 2) throw DomainError("angle grid needs at least 2 points per axis");
  const double step = 2.0 * std::numbers::pi / grid;
  double worst = 0.0;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const double alpha = i * step, beta = j * step;
      const Mat3 two_sided = evolve_correlation(alpha, beta, 1.0, c0, 1.0);
      const Mat3 one_sided = evolve_correlation(alpha - beta, 0.0, 1.0, c0, 1.0);
      worst = std::max(worst, probe(two_sided, one_sided));
    }
  return worst;
}

}  // namespace

Mat3 seed_matrix(const EquivalenceSeed& seed) {
  Mat3 c;
  c << seed.k1, 0.0, seed.k2, 0.0, seed.k3, 0.0, -seed.k2, 0.0, seed.k1;
  return c;
}

bool is_physical_seed(const EquivalenceSeed& seed) {
  return 2.0 * std::hypot(seed.k1, seed.k2) + seed.k3 <= 1.0 + kStructTol &&
         seed.k3 >= -1.0 - kStructTol;
}

ConditionReport check_conditions(const Mat3& c0) {
  ConditionReport r;
  r.trace_condition = std::abs(c0(0, 0) - c0(2, 2)) <= kStructTol &&
                      std::abs(c0(0, 2) + c0(2, 0)) <= kStructTol;
  r.det_condition = std::abs(c0(0, 1)) <= kStructTol && std::abs(c0(1, 0)) <= kStructTol &&
                    std::abs(c0(1, 2)) <= kStructTol && std::abs(c0(2, 1)) <= kStructTol;
  r.trace_residual = max_grid_difference(c0, 12, [](const Mat3& a, const Mat3& b) {
    return std::abs((a.transpose() * a).trace() - (b.transpose() * b).trace());
  });
  r.det_residual = max_grid_difference(c0, 12, [](const Mat3& a, const Mat3& b) {
    return std::abs(a.determinant() - b.determinant());
  });
  return r;
}

double grid_sv_residual(const Mat3& c0, int grid) {
  return max_grid_difference(c0, grid, [](const Mat3& a, const Mat3& b) {
    return (sorted_magnitudes(a) - sorted_magnitudes(b)).cwiseAbs().maxCoeff();
  });
}

bool verify_equivalence(const EquivalenceSeed& seed, int grid) {
  if (!is_physical_seed(seed))
    throw DomainError("seed violates 2 sqrt(k1^2 + k2^2) + |k3| <= 1; not the "
                      "correlation matrix of a state");
  return grid_sv_residual(seed_matrix(seed), grid) < kEquivalenceTol;
}

}  // namespace spingeo
