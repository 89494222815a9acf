#ifndef SPINGEO_GEOMETRY_HPP
#define SPINGEO_GEOMETRY_HPP

#include <spingeo/closed_form.hpp>
#include <spingeo/types.hpp>

#include <vector>

namespace spingeo {

/// Signed canonical form c = P diag(values) Q^T with P, Q in SO(3).
/// values are ordered by descending magnitude; any sign needed to keep the
/// factors proper rotations is carried by the last (smallest) entry, so
/// sign(values.prod()) = sign(det c).
struct CorrelationVector {
  Vec3 values = Vec3::Zero();
  Mat3 left_factor = Mat3::Identity();
  Mat3 right_factor = Mat3::Identity();
};

/// One-sided Jacobi factorization of a real 3x3 matrix into the signed
/// canonical form above. Throws NumericError if 50 sweeps do not converge.
CorrelationVector svd3(const Mat3& c);

struct MembershipVerdict {
  bool in_tetrahedron = false;  ///< physical-state region for m = n = 0
  bool in_octahedron = false;   ///< separable region for m = n = 0
  double tetra_margin = 0.0;    ///< smallest facet value (1 -+ v1 -+ v2 -+ v3)/4
  double octa_margin = 0.0;     ///< 1 - |v1| - |v2| - |v3|
};

/// Region tests for a signed correlation vector. Booleans allow a -1e-9
/// slack so boundary states (Bell corners, Werner threshold) test true.
MembershipVerdict membership(const Vec3& values);
MembershipVerdict membership(const CorrelationVector& v);

enum class CrossingStatus { AlreadySeparable, Crossed, NotOnGrid };

struct CrossingResult {
  CrossingStatus status = CrossingStatus::NotOnGrid;
  /// Dimensionless time lambda*t of the entangled-to-separable transition
  /// (0 when already separable, unset for NotOnGrid).
  double lambda_t = 0.0;
  /// True when the asymptote sits on the octahedron boundary (|w| within
  /// 1e-9 of 1), the only way a valid state never crosses.
  bool asymptotic_boundary = false;
  /// Canonical form at the crossing (at t = 0 when already separable, of the
  /// asymptotic matrix when no crossing lies on the grid).
  CorrelationVector at_crossing;
};

/// First time the evolved correlation vector enters the separable octahedron,
/// located on a lambda*t grid of step 0.01 up to 50 and refined by bisection
/// to 1e-10. Requires both Bloch vectors zero (throws DomainError otherwise);
/// only then is octahedron membership equivalent to separability.
CrossingResult separability_crossing(const AnalyticSolution& sol);

/// Canonical forms of the evolved correlation matrix at the given
/// dimensionless times lambda*t.
std::vector<CorrelationVector> trajectory_points(const AnalyticSolution& sol,
                                                 const std::vector<double>& lambda_ts);

}  // namespace spingeo

#endif
