#include <spingeo/pauli.hpp>

#include <array>
#include <cmath>

namespace spingeo {

namespace {

constexpr double kImagTol = 1e-9;

std::array<Mat2c, 4> make_sigmas() {
  const Complex i(0.0, 1.0);
  std::array<Mat2c, 4> s;
  s[0] << 1, 0, 0, 1;
  s[1] << 0, 1, 1, 0;
  s[2] << 0, -i, i, 0;
  s[3] << 1, 0, 0, -1;
  return s;
}

std::array<Mat4c, 16> make_basis() {
  std::array<Mat4c, 16> b;
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 4; ++c) {
      Mat4c& out = b[4 * a + c];
      for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s)
          out.block<2, 2>(2 * r, 2 * s) = sigma(a)(r, s) * sigma(c);
    }
  return b;
}

double real_coefficient(const Mat4c& rho, int a, int b) {
  const Complex tr = (basis_element(a, b) * rho).trace();
  if (std::abs(tr.imag()) > kImagTol)
    throw NumericError("pauli coefficient has imaginary residue " +
                       std::to_string(tr.imag()) + "; input is not Hermitian");
  return tr.real();
}

}  // namespace

const Mat2c& sigma(int i) {
  static const std::array<Mat2c, 4> s = make_sigmas();
  if (i < 0 || i > 3) throw DomainError("pauli index out of range: " + std::to_string(i));
  return s[i];
}

const Mat4c& basis_element(int a, int b) {
  if (a < 0 || a > 3 || b < 0 || b > 3)
    throw DomainError("basis indices out of range: (" + std::to_string(a) + ", " +
                      std::to_string(b) + ")");
  static const std::array<Mat4c, 16> basis = make_basis();
  return basis[4 * a + b];
}

PauliDecomposition decompose(const Mat4c& rho) {
  PauliDecomposition d;
  for (int i = 1; i < 4; ++i) {
    d.m(i - 1) = real_coefficient(rho, i, 0);
    d.n(i - 1) = real_coefficient(rho, 0, i);
    for (int j = 1; j < 4; ++j) d.c(i - 1, j - 1) = real_coefficient(rho, i, j);
  }
  return d;
}

Mat4c reconstruct(const PauliDecomposition& d) {
  Mat4c rho = basis_element(0, 0);
  for (int i = 1; i < 4; ++i) {
    rho += d.m(i - 1) * basis_element(i, 0);
    rho += d.n(i - 1) * basis_element(0, i);
    for (int j = 1; j < 4; ++j) rho += d.c(i - 1, j - 1) * basis_element(i, j);
  }
  return 0.25 * rho;
}

double joint_correlation(const PauliDecomposition& d, const Vec3& a, const Vec3& b) {
  if (std::abs(a.norm() - 1.0) > kImagTol || std::abs(b.norm() - 1.0) > kImagTol)
    throw DomainError("measurement directions must be unit vectors");
  return a.dot(d.c * b);
}

}  // namespace spingeo
