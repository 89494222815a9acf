#ifndef SPINGEO_STATES_HPP
#define SPINGEO_STATES_HPP

#include <spingeo/pauli.hpp>
#include <spingeo/types.hpp>

#include <random>

namespace spingeo {

/// Two-qubit density matrix, validated on construction: Hermitian, unit trace,
/// positive semidefinite, all within 1e-9. Throws ValidationError otherwise.
class DensityMatrix {
 public:
  explicit DensityMatrix(const Mat4c& rho);

  const Mat4c& matrix() const { return rho_; }
  PauliDecomposition decomposition() const { return decompose(rho_); }

 private:
  Mat4c rho_;
};

/// Alias for the validating constructor, for call sites that read better as a check.
DensityMatrix validate(const Mat4c& rho);

enum class BellKind { PsiMinus, PsiPlus, PhiMinus, PhiPlus };

DensityMatrix bell_state(BellKind kind);

/// Werner mixture x |psi-><psi-| + (1-x)/4 I, x in [0, 1].
DensityMatrix werner(double x);

struct StateMetrics {
  double purity = 0.0;       ///< Tr rho^2
  double concurrence = 0.0;  ///< Wootters entanglement monotone
  bool ppt = false;          ///< partial transpose positive (iff separable for 2 qubits)
};

StateMetrics metrics(const DensityMatrix& rho);

/// Transpose the second-qubit indices only.
Mat4c partial_transpose(const Mat4c& rho);

/// Rotation matrix O with O_ij = Re Tr(sigma_i U sigma_j U^dag) / 2, the SO(3)
/// image of a single-qubit unitary acting by conjugation on the Bloch vector.
/// Throws DomainError when U is not unitary within 1e-9.
Mat3 su2_to_so3(const Mat2c& u);

/// Rotation about the y axis by angle a, [[cos(a/2), -sin(a/2)], [sin(a/2), cos(a/2)]].
Mat2c rotation_y(double angle);

/// Ginibre-distributed random density matrix G G^dag / Tr(G G^dag).
DensityMatrix random_state(std::mt19937_64& rng);

}  // namespace spingeo

#endif
