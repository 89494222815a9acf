#include <spingeo/closed_form.hpp>

#include <cmath>

namespace spingeo {

namespace {

constexpr double kRadicandTol = 1e-12;

void check_time(double lambda, double t) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw DomainError("evolution time must be finite and >= 0");
  if (lambda < 0.0 || !std::isfinite(lambda))
    throw DomainError("decoherence rate must be finite and >= 0");
}

/// In-plane Bloch update: the component along axis u = (sin a, cos a) in the
/// (x, z) plane survives, the rest damps by E. The survivor is written as
/// E (m - p u) + p u so that a = 0 conserves m_z and damps m_x exactly.
void evolve_bloch(double angle, double e, Vec3& m) {
  const double ux = std::sin(angle), uz = std::cos(angle);
  const double p = ux * m(0) + uz * m(2);
  m(0) = e * (m(0) - p * ux) + p * ux;
  m(1) *= e;
  m(2) = e * (m(2) - p * uz) + p * uz;
}

double clamped_sqrt(double radicand) {
  if (radicand < -kRadicandTol)
    throw NumericError("singular-value radicand is negative: " +
                       std::to_string(radicand));
  return std::sqrt(std::max(radicand, 0.0));
}

}  // namespace

AnalyticSolution make_solution(const DecoherenceConfig& config,
                               const DensityMatrix& initial) {
  if (config.lambda < 0.0)
    throw DomainError("decoherence rate must be nonnegative, got " +
                      std::to_string(config.lambda));
  const ProjectorSet& p = config.projectors;
  return AnalyticSolution{p.mode, p.alpha, p.beta, config.lambda,
                          initial.decomposition()};
}

AnalyticSolution make_solution(Mode mode, double alpha, double beta, double lambda,
                               const DensityMatrix& initial) {
  return make_solution(DecoherenceConfig{lambda, build_projectors(mode, alpha, beta)},
                       initial);
}

Mat3 evolve_correlation(double alpha, double beta, double lambda, const Mat3& c0,
                        double t) {
  check_time(lambda, t);
  if (t == 0.0) return c0;
  const double e = std::exp(-lambda * t);
  const double ux = std::sin(alpha), uz = std::cos(alpha);
  const double vx = std::sin(beta), vz = std::cos(beta);
  const double w = ux * vx * c0(0, 0) + ux * vz * c0(0, 2) + uz * vx * c0(2, 0) +
                   uz * vz * c0(2, 2);

  Mat3 c = e * c0;
  const double axis[2] = {ux, uz};
  const int idx[2] = {0, 2};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double survivor = w * axis[i] * (j == 0 ? vx : vz);
      c(idx[i], idx[j]) = e * (c0(idx[i], idx[j]) - survivor) + survivor;
    }
  return c;
}

PauliDecomposition evolve(const AnalyticSolution& sol, double t) {
  check_time(sol.lambda, t);
  if (t == 0.0) return sol.initial;
  const double e = std::exp(-sol.lambda * t);
  PauliDecomposition d = sol.initial;
  evolve_bloch(sol.alpha, e, d.m);
  evolve_bloch(sol.beta, e, d.n);
  d.c = evolve_correlation(sol.alpha, sol.beta, sol.lambda, sol.initial.c, t);
  return d;
}

DensityMatrix evolve_state(const AnalyticSolution& sol, double t) {
  return DensityMatrix(reconstruct(evolve(sol, t)));
}

AsymptoticState asymptotic(const AnalyticSolution& sol) {
  const double ux = std::sin(sol.alpha), uz = std::cos(sol.alpha);
  const double vx = std::sin(sol.beta), vz = std::cos(sol.beta);
  const Mat3& c0 = sol.initial.c;

  AsymptoticState out;
  out.w = ux * vx * c0(0, 0) + ux * vz * c0(0, 2) + uz * vx * c0(2, 0) +
          uz * vz * c0(2, 2);
  // + 0.0 turns the -0 entries from w < 0 times a vanishing direction into
  // plain zeros.
  out.c_infinity =
      (out.w * Vec3(ux, 0.0, uz) * Vec3(vx, 0.0, vz).transpose()).array() + 0.0;
  out.correlation_vector = Vec3(0.0, 0.0, std::abs(out.w));
  return out;
}

Vec3 bell_singlet_singular_values(double delta, double lambda, double t) {
  check_time(lambda, t);
  if (t == 0.0) return Vec3(1.0, 1.0, 1.0);
  const double e = std::exp(-lambda * t);
  const double cd = std::cos(delta);
  const double c2d = std::cos(2.0 * delta);
  const double inner = 5.0 * e * e - 3.0 * e * e * c2d + 2.0 * (2.0 * e + 1.0) * cd * cd;
  const double a = 3.0 * e * e + 2.0 * cd * cd - e * e * c2d;
  const double b = std::sqrt(2.0) * (1.0 - e) * cd * clamped_sqrt(inner);
  return Vec3(e, 0.5 * clamped_sqrt(a - b), 0.5 * clamped_sqrt(a + b));
}

Eigen::Vector2d bell_singlet_expansion(double delta, double lambda, double t) {
  check_time(lambda, t);
  const double e = std::exp(-lambda * t);
  const double ratio = (e - 1.0) / (e + 1.0);
  const double d2 = delta * delta;
  return {e + 0.5 * e * ratio * d2, 1.0 + 0.5 * (2.0 * e + 1.0) * ratio * d2};
}

Vec3 bell_singlet_eigenvalues(double delta, double lambda, double t) {
  check_time(lambda, t);
  const double e = std::exp(-lambda * t);
  const double cd = std::cos(delta), sd = std::sin(delta);
  return Vec3(-e, -e, -(cd * cd + e * sd * sd));
}

}  // namespace spingeo
