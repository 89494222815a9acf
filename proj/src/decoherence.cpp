#include <spingeo/decoherence.hpp>

#include <cmath>

namespace spingeo {

namespace {

Mat4c kron2(const Mat2c& a, const Mat2c& b) {
  Mat4c out;
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s) out.block<2, 2>(2 * r, 2 * s) = a(r, s) * b;
  return out;
}

void require_finite_angle(const char* name, double value) {
  if (!std::isfinite(value))
    throw DomainError(std::string(name) + " must be finite");
}

}  // namespace

ProjectorSet build_projectors(Mode mode, double alpha, double beta) {
  require_finite_angle("alpha", alpha);
  require_finite_angle("beta", beta);
  if (mode == Mode::A && (alpha != 0.0 || beta != 0.0))
    throw DomainError("mode A takes no rotation angles");
  if (mode == Mode::B && beta != 0.0)
    throw DomainError("mode B rotates only the first qubit; beta must be 0");

  const Mat2c u1 = rotation_y(mode == Mode::A ? 0.0 : alpha);
  const Mat2c u2 = rotation_y(mode == Mode::C ? beta : 0.0);
  std::array<Mat2c, 2> axis1, axis2;
  for (int a = 0; a < 2; ++a) {
    Mat2c level = Mat2c::Zero();
    level(a, a) = 1.0;
    axis1[a] = u1 * level * u1.adjoint();
    axis2[a] = u2 * level * u2.adjoint();
  }

  ProjectorSet set{mode, alpha, beta, {}};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) set.projectors[2 * a + b] = kron2(axis1[a], axis2[b]);
  return set;
}

Mat4c dissipator(const DecoherenceConfig& config, const Mat4c& rho) {
  if (config.lambda < 0.0)
    throw DomainError("decoherence rate must be nonnegative, got " +
                      std::to_string(config.lambda));
  Mat4c pinched = Mat4c::Zero();
  for (const Mat4c& p : config.projectors.projectors) pinched += p * rho * p;
  return config.lambda * (rho - pinched);
}

DensityMatrix integrate(const DecoherenceConfig& config, const DensityMatrix& initial,
                        double t, double dt) {
  if (t < 0.0 || !std::isfinite(t)) throw DomainError("integration time must be >= 0");
  if (dt < 0.0) throw DomainError("step size must be positive");
  if (config.lambda < 0.0)
    throw DomainError("decoherence rate must be nonnegative, got " +
                      std::to_string(config.lambda));
  if (t == 0.0 || config.lambda == 0.0) return initial;
  if (dt == 0.0) dt = 1e-3 / config.lambda;

  const auto f = [&config](const Mat4c& r) { return (-dissipator(config, r)).eval(); };
  const auto step = [&f](Mat4c& rho, double h) {
    const Mat4c k1 = f(rho);
    const Mat4c k2 = f(rho + 0.5 * h * k1);
    const Mat4c k3 = f(rho + 0.5 * h * k2);
    const Mat4c k4 = f(rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  };

  Mat4c rho = initial.matrix();
  const auto nsteps = static_cast<long long>(std::floor(t / dt));
  for (long long i = 0; i < nsteps; ++i) step(rho, dt);
  const double rest = t - static_cast<double>(nsteps) * dt;
  if (rest > 0.0) step(rho, rest);

  try {
    return DensityMatrix(rho);
  } catch (const ValidationError& e) {
    throw NumericError(std::string("integration drift: ") + e.what());
  }
}

}  // namespace spingeo
