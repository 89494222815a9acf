#ifndef SPINGEO_EQUIVALENCE_HPP
#define SPINGEO_EQUIVALENCE_HPP

#include <spingeo/types.hpp>

namespace spingeo {

/// Parameters of the correlation-matrix family
///   [[k1, 0, k2], [0, k3, 0], [-k2, 0, k1]]
/// for which the two-sided tilted channel (angles alpha, beta) and the
/// one-sided channel at the difference angle alpha - beta produce the same
/// singular-value trajectories.
struct EquivalenceSeed {
  double k1 = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
};

Mat3 seed_matrix(const EquivalenceSeed& seed);

/// Whether the seed matrix is the correlation part of a physical state with
/// vanishing Bloch vectors: 2 sqrt(k1^2 + k2^2) + k3 <= 1 and k3 >= -1
/// (equivalently, its signed canonical vector lies in the state tetrahedron).
bool is_physical_seed(const EquivalenceSeed& seed);

/// Structural verdicts and functional probes for the two reduction
/// conditions on an initial correlation matrix:
///   1. trace condition: c_xx = c_zz and c_xz = -c_zx
///   2. det condition:   c_xy = c_yx = c_yz = c_zy = 0
/// The booleans test the entry pattern directly (tolerance 1e-9). The
/// residuals compare Tr(c^T c) and det c between the two-sided and reduced
/// one-sided evolutions over a 12x12 angle grid at lambda*t = 1; they are a
/// weaker probe (a pure det-condition violation can leave both residuals at
/// roundoff while the singular values differ), which is why
/// verify_equivalence compares singular values instead.
struct ConditionReport {
  bool trace_condition = false;
  bool det_condition = false;
  double trace_residual = 0.0;
  double det_residual = 0.0;
};

ConditionReport check_conditions(const Mat3& c0);

/// Largest difference of sorted singular-value magnitudes between the
/// two-sided evolution at (alpha, beta) and the one-sided one at
/// alpha - beta, over a grid x grid angle mesh at lambda*t = 1.
double grid_sv_residual(const Mat3& c0, int grid = 12);

/// True when the seed's singular-value trajectories are grid-equivalent
/// within 1e-9. Throws DomainError for unphysical seeds.
bool verify_equivalence(const EquivalenceSeed& seed, int grid = 12);

}  // namespace spingeo

#endif
