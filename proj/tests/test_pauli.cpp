#include <spingeo/pauli.hpp>
#include <spingeo/states.hpp>

#include <doctest.h>

#include "helpers.hpp"

#include <random>

using namespace spingeo;
using testutil::max_diff;

namespace {

Mat4c kron(const Mat2c& a, const Mat2c& b) {
  Mat4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

}  // namespace

TEST_CASE("pauli matrices") {
  CHECK(sigma(0).isApprox(Mat2c::Identity()));
  for (int i = 1; i <= 3; ++i) {
    CAPTURE(i);
    CHECK((sigma(i) - sigma(i).adjoint()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(std::abs(sigma(i).trace()) == 0.0);
    CHECK((sigma(i) * sigma(i) - Mat2c::Identity()).cwiseAbs().maxCoeff() == 0.0);
  }
  // [sigma_x, sigma_y] = 2i sigma_z
  const Mat2c comm = sigma(1) * sigma(2) - sigma(2) * sigma(1);
  CHECK((comm - 2.0 * Complex(0, 1) * sigma(3)).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(sigma(4), DomainError);
  CHECK_THROWS_AS(sigma(-1), DomainError);
}

TEST_CASE("basis elements are kronecker products and orthogonal") {
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      CAPTURE(a);
      CAPTURE(b);
      CHECK((basis_element(a, b) - kron(sigma(a), sigma(b))).cwiseAbs().maxCoeff() ==
            0.0);
    }
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          const Complex ip =
              (basis_element(a, b).adjoint() * basis_element(c, d)).trace();
          const double expected = (a == c && b == d) ? 4.0 : 0.0;
          CHECK(std::abs(ip - expected) == 0.0);
        }
  CHECK_THROWS_AS(basis_element(4, 0), DomainError);
  CHECK_THROWS_AS(basis_element(0, -1), DomainError);
}

TEST_CASE("singlet decomposition is m = n = 0, c = -identity") {
  const PauliDecomposition d = bell_state(BellKind::PsiMinus).decomposition();
  CHECK(d.m.cwiseAbs().maxCoeff() == 0.0);
  CHECK(d.n.cwiseAbs().maxCoeff() == 0.0);
  CHECK(max_diff(d.c, (-Mat3::Identity()).eval()) == 0.0);
}

TEST_CASE("decompose / reconstruct round trip") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    const Mat4c rho = random_state(rng).matrix();
    const PauliDecomposition d = decompose(rho);
    CHECK(max_diff(reconstruct(d), rho) < 1e-14);

    const PauliDecomposition d2 = decompose(reconstruct(d));
    CHECK((d2.m - d.m).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((d2.n - d.n).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(max_diff(d2.c, d.c) < 1e-14);
  }
}

TEST_CASE("decompose rejects non-hermitian input") {
  Mat4c rho = Mat4c::Identity() * 0.25;
  rho(0, 1) = Complex(0.0, 0.3);  // no conjugate partner
  CHECK_THROWS_AS(decompose(rho), NumericError);
}

TEST_CASE("joint correlation") {
  const PauliDecomposition d = bell_state(BellKind::PsiMinus).decomposition();
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 a = Vec3(gauss(rng), gauss(rng), gauss(rng)).normalized();
    const Vec3 b = Vec3(gauss(rng), gauss(rng), gauss(rng)).normalized();
    // Anti-correlation along any common axis is the singlet's signature.
    CHECK(joint_correlation(d, a, b) == doctest::Approx(-a.dot(b)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(joint_correlation(d, Vec3(2, 0, 0), Vec3(0, 0, 1)), DomainError);
  CHECK_THROWS_AS(joint_correlation(d, Vec3(1, 0, 0), Vec3::Zero()), DomainError);
}
