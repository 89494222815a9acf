#include <spingeo/geometry.hpp>

#include <algorithm>
#include <cmath>

namespace spingeo {

namespace {

constexpr double kMembershipTol = 1e-9;
constexpr int kMaxSweeps = 50;

/// Orthogonalize columns p and q of w by a Givens rotation, accumulating the
/// rotation into v. Returns false when the pair is already orthogonal, or
/// when either column sits below the floor where its direction is pure
/// roundoff: such columns are later rebuilt by orthogonal completion, and
/// rotating them would chase underflowed residue forever.
bool orthogonalize_pair(Mat3& w, Mat3& v, int p, int q, double floor2) {
  const double app = w.col(p).squaredNorm();
  const double aqq = w.col(q).squaredNorm();
  const double apq = w.col(p).dot(w.col(q));
  if (std::abs(apq) <= 1e-15 * std::sqrt(app * aqq) || apq == 0.0) return false;
  if (std::min(app, aqq) <= floor2) return false;

  const double zeta = (aqq - app) / (2.0 * apq);
  // For |zeta| large enough that zeta^2 overflows, fall back to the
  // asymptotic root 1/(2 zeta); otherwise the rotation would degenerate to a
  // no-op and subnormal-scale columns could never be drained.
  const double tan = std::abs(zeta) > 1e150
                         ? 0.5 / zeta
                         : std::copysign(1.0, zeta) /
                               (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
  const double cos = 1.0 / std::sqrt(1.0 + tan * tan);
  const double sin = cos * tan;

  for (Mat3* m : {&w, &v}) {
    const Vec3 colp = m->col(p);
    m->col(p) = cos * colp - sin * m->col(q);
    m->col(q) = sin * colp + cos * m->col(q);
  }
  return true;
}

/// Unit vector orthogonal to u, built from the axis least aligned with u.
Vec3 any_orthogonal(const Vec3& u) {
  int k = 0;
  u.cwiseAbs().minCoeff(&k);
  const Vec3 seed = Vec3::Unit(k);
  return (seed - seed.dot(u) * u).normalized();
}

}  // namespace

CorrelationVector svd3(const Mat3& c) {
  Mat3 w = c;
  Mat3 v = Mat3::Identity();
  const double floor2 = std::pow(1e-13 * c.norm(), 2);

  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    converged = true;
    for (auto [p, q] : {std::pair{0, 1}, {0, 2}, {1, 2}})
      if (orthogonalize_pair(w, v, p, q, floor2)) converged = false;
  }
  if (!converged) throw NumericError("svd3: Jacobi sweeps did not converge");

  Vec3 norms = w.colwise().norm();
  std::array<int, 3> order = {0, 1, 2};
  std::sort(order.begin(), order.end(),
            [&norms](int a, int b) { return norms(a) > norms(b); });

  CorrelationVector out;
  Mat3 u;
  for (int i = 0; i < 3; ++i) {
    out.values(i) = norms(order[i]);
    u.col(i) = w.col(order[i]);
    out.right_factor.col(i) = v.col(order[i]);
  }

  // Normalize the left factor. Columns whose norm sits near the roundoff
  // floor of the sweep have meaningless directions, so those are replaced by
  // orthogonal completions; the values themselves stay the honest norms
  // (zeroing them would fabricate octahedron crossings for trajectories that
  // only approach the boundary). The threshold is wider than the sweep floor
  // so every column the sweep refused to rotate gets rebuilt here. A zero
  // matrix keeps identity factors.
  const double unreliable = out.values(0) * 1e-12;
  if (out.values(0) == 0.0) {
    u = Mat3::Identity();
  } else {
    u.col(0) /= out.values(0);
    u.col(1) = out.values(1) <= unreliable ? any_orthogonal(u.col(0))
                                           : (u.col(1) / out.values(1)).eval();
    u.col(2) = out.values(2) <= unreliable ? u.col(0).cross(u.col(1))
                                           : (u.col(2) / out.values(2)).eval();
  }
  out.left_factor = u;

  if (out.left_factor.determinant() < 0.0) {
    out.left_factor.col(2) *= -1.0;
    out.values(2) = -out.values(2);
  }
  if (out.right_factor.determinant() < 0.0) {
    out.right_factor.col(2) *= -1.0;
    out.values(2) = -out.values(2);
  }
  if (out.values(2) == 0.0) out.values(2) = 0.0;  // normalize -0
  return out;
}

MembershipVerdict membership(const Vec3& values) {
  const double v1 = values(0), v2 = values(1), v3 = values(2);
  const Eigen::Vector4d facets(0.25 * (1.0 - v1 - v2 - v3),
                               0.25 * (1.0 - v1 + v2 + v3),
                               0.25 * (1.0 + v1 - v2 + v3),
                               0.25 * (1.0 + v1 + v2 - v3));
  MembershipVerdict out;
  out.tetra_margin = facets.minCoeff();
  // Fold the absolute sum largest-first: a dominant value near 1 then cancels
  // against the constant term exactly, so tiny companions keep the margin
  // negative. The naive sum rounds 1 + eps + eps back to 1 and reports
  // boundary contact for trajectories that only approach it asymptotically.
  Vec3 a = values.cwiseAbs();
  std::sort(a.data(), a.data() + 3, std::greater<double>());
  out.octa_margin = ((1.0 - a(0)) - a(1)) - a(2);
  out.in_tetrahedron = out.tetra_margin >= -kMembershipTol;
  out.in_octahedron = out.octa_margin >= -kMembershipTol;
  return out;
}

MembershipVerdict membership(const CorrelationVector& v) { return membership(v.values); }

CrossingResult separability_crossing(const AnalyticSolution& sol) {
  if (sol.initial.m.cwiseAbs().maxCoeff() > kMembershipTol ||
      sol.initial.n.cwiseAbs().maxCoeff() > kMembershipTol)
    throw DomainError(
        "separability crossing requires vanishing Bloch vectors; octahedron "
        "membership does not witness separability otherwise");

  // lambda = 0 freezes the state; treat it as lambda*t grid over actual t.
  const double rate = sol.lambda > 0.0 ? sol.lambda : 1.0;
  const auto margin_at = [&sol, rate](double lambda_t) {
    const PauliDecomposition d = evolve(sol, lambda_t / rate);
    return membership(svd3(d.c)).octa_margin;
  };

  CrossingResult out;
  double lo = 0.0;
  if (margin_at(0.0) >= -1e-12) {
    out.status = CrossingStatus::AlreadySeparable;
    out.lambda_t = 0.0;
    out.at_crossing = svd3(sol.initial.c);
    return out;
  }

  constexpr double kStep = 0.01, kEnd = 50.0, kRefine = 1e-10;
  double hi = 0.0;
  bool found = false;
  for (double s = kStep; s <= kEnd; s += kStep) {
    if (margin_at(s) >= 0.0) {
      hi = s;
      found = true;
      break;
    }
    lo = s;
  }

  if (!found) {
    const AsymptoticState inf = asymptotic(sol);
    out.status = CrossingStatus::NotOnGrid;
    out.asymptotic_boundary = 1.0 - std::abs(inf.w) < kMembershipTol;
    out.at_crossing = svd3(inf.c_infinity);
    return out;
  }

  while (hi - lo > kRefine) {
    const double mid = 0.5 * (lo + hi);
    (margin_at(mid) >= 0.0 ? hi : lo) = mid;
  }
  out.status = CrossingStatus::Crossed;
  out.lambda_t = 0.5 * (lo + hi);
  out.at_crossing = svd3(evolve(sol, out.lambda_t / rate).c);
  return out;
}

std::vector<CorrelationVector> trajectory_points(const AnalyticSolution& sol,
                                                 const std::vector<double>& lambda_ts) {
  const double rate = sol.lambda > 0.0 ? sol.lambda : 1.0;
  std::vector<CorrelationVector> points;
  points.reserve(lambda_ts.size());
  for (double s : lambda_ts) points.push_back(svd3(evolve(sol, s / rate).c));
  return points;
}

}  // namespace spingeo
