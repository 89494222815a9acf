#include <spingeo/states.hpp>

#include <algorithm>
#include <cmath>

namespace spingeo {

namespace {

constexpr double kStructTol = 1e-9;

/// Projector entries written out exactly; an outer product of 1/sqrt(2)
/// amplitudes would smear every 0.5 by one ulp.
Mat4c bell_projector(BellKind kind) {
  const bool phi = kind == BellKind::PhiMinus || kind == BellKind::PhiPlus;
  const double sign =
      (kind == BellKind::PsiPlus || kind == BellKind::PhiPlus) ? 0.5 : -0.5;
  const int a = phi ? 0 : 1;
  const int b = phi ? 3 : 2;
  Mat4c rho = Mat4c::Zero();
  rho(a, a) = 0.5;
  rho(b, b) = 0.5;
  rho(a, b) = sign;
  rho(b, a) = sign;
  return rho;
}

/// Hermitian square root with negative eigenvalues clamped to zero.
Mat4c sqrt_psd(const Mat4c& h) {
  Eigen::SelfAdjointEigenSolver<Mat4c> es(h);
  Eigen::Vector4d d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

DensityMatrix::DensityMatrix(const Mat4c& rho) : rho_(rho) {
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kStructTol)
    throw ValidationError("density matrix is not Hermitian (residue " +
                          std::to_string(herm) + ")");
  const Complex tr = rho.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kStructTol)
    throw ValidationError("density matrix trace is not 1 (got " +
                          std::to_string(tr.real()) + ")");
  Eigen::SelfAdjointEigenSolver<Mat4c> es(0.5 * (rho + rho.adjoint()),
                                          Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -kStructTol)
    throw ValidationError("density matrix has negative eigenvalue " +
                          std::to_string(min_eig));
}

DensityMatrix validate(const Mat4c& rho) { return DensityMatrix(rho); }

DensityMatrix bell_state(BellKind kind) { return DensityMatrix(bell_projector(kind)); }

DensityMatrix werner(double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainError("werner weight must lie in [0, 1], got " + std::to_string(x));
  const Mat4c singlet = bell_state(BellKind::PsiMinus).matrix();
  return DensityMatrix(x * singlet + (1.0 - x) * 0.25 * Mat4c::Identity());
}

StateMetrics metrics(const DensityMatrix& rho) {
  const Mat4c& r = rho.matrix();
  StateMetrics out;
  out.purity = (r * r).trace().real();

  // Wootters concurrence through the Hermitian form sqrt(rho) rho~ sqrt(rho),
  // which has the same spectrum as rho rho~ but keeps the eigenproblem self-adjoint.
  const Mat4c yy = basis_element(2, 2);
  const Mat4c spin_flipped = yy * r.conjugate() * yy;
  const Mat4c root = sqrt_psd(r);
  Eigen::SelfAdjointEigenSolver<Mat4c> es(root * spin_flipped * root,
                                          Eigen::EigenvaluesOnly);
  Eigen::Vector4d lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  std::sort(lam.data(), lam.data() + 4, std::greater<double>());
  out.concurrence = std::max(0.0, lam(0) - lam(1) - lam(2) - lam(3));

  Eigen::SelfAdjointEigenSolver<Mat4c> pt(partial_transpose(r), Eigen::EigenvaluesOnly);
  out.ppt = pt.eigenvalues().minCoeff() >= -kStructTol;
  return out;
}

Mat4c partial_transpose(const Mat4c& rho) {
  Mat4c out;
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2)
      for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2)
          out(2 * a1 + a2, 2 * b1 + b2) = rho(2 * a1 + b2, 2 * b1 + a2);
  return out;
}

Mat3 su2_to_so3(const Mat2c& u) {
  const double residue = (u * u.adjoint() - Mat2c::Identity()).cwiseAbs().maxCoeff();
  if (residue > kStructTol)
    throw DomainError("su2_to_so3 requires a unitary matrix (residue " +
                      std::to_string(residue) + ")");
  Mat3 o;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      o(i, j) = 0.5 * (sigma(i + 1) * u * sigma(j + 1) * u.adjoint()).trace().real();
  return o;
}

Mat2c rotation_y(double angle) {
  const double c = std::cos(0.5 * angle), s = std::sin(0.5 * angle);
  Mat2c u;
  u << c, -s, s, c;
  return u;
}

DensityMatrix random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat4c g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  const Mat4c gg = g * g.adjoint();
  return DensityMatrix(gg / gg.trace().real());
}

}  // namespace spingeo
