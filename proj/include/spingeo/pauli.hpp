#ifndef SPINGEO_PAULI_HPP
#define SPINGEO_PAULI_HPP

#include <spingeo/types.hpp>

namespace spingeo {

/// Coefficients of a two-qubit Hermitian matrix in the Pauli product basis:
///   rho = (1/4) (I + m.sigma (x) I + I (x) n.sigma + sum_ij c_ij sigma_i (x) sigma_j)
/// m is the first-qubit Bloch vector, n the second, c the 3x3 correlation matrix.
struct PauliDecomposition {
  Vec3 m = Vec3::Zero();
  Vec3 n = Vec3::Zero();
  Mat3 c = Mat3::Zero();
};

/// Single-qubit Pauli matrix; index 0 is the identity, 1..3 are x, y, z.
const Mat2c& sigma(int i);

/// Two-qubit basis element sigma_a (x) sigma_b with a, b in 0..3.
const Mat4c& basis_element(int a, int b);

/// Extract Bloch vectors and correlation matrix from a Hermitian 4x4 matrix.
/// The constant (identity) coefficient is not stored, so the round trip through
/// reconstruct() is exact only for unit-trace input. Throws NumericError when
/// an extracted coefficient has imaginary residue above 1e-9, which catches
/// non-Hermitian input.
PauliDecomposition decompose(const Mat4c& rho);

/// Assemble the unit-trace Hermitian matrix with the given coefficients.
Mat4c reconstruct(const PauliDecomposition& d);

/// Correlation a.c.b of spin measurements along unit directions a and b.
double joint_correlation(const PauliDecomposition& d, const Vec3& a, const Vec3& b);

}  // namespace spingeo

#endif
