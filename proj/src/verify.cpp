#include <spingeo/verify.hpp>

#include <spingeo/closed_form.hpp>
#include <spingeo/decoherence.hpp>
#include <spingeo/equivalence.hpp>
#include <spingeo/geometry.hpp>
#include <spingeo/states.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

namespace spingeo {

namespace {

std::string format_residual(const char* fmt, int cases, double worst) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), fmt, cases, worst);
  return buf;
}

double max_difference(const PauliDecomposition& a, const PauliDecomposition& b) {
  return std::max({(a.m - b.m).cwiseAbs().maxCoeff(), (a.n - b.n).cwiseAbs().maxCoeff(),
                   (a.c - b.c).cwiseAbs().maxCoeff()});
}

Mode mode_for(int index) {
  switch (index % 3) {
    case 0: return Mode::A;
    case 1: return Mode::B;
    default: return Mode::C;
  }
}

CheckResult check_oracle_agreement(std::mt19937_64& rng, int cases, bool inject_fault) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> rate(0.5, 2.0);
  std::uniform_real_distribution<double> horizon(0.05, 3.0);

  constexpr double tol = 1e-8;
  double worst = 0.0;
  std::string failing;
  for (int i = 0; i < cases; ++i) {
    const Mode mode = mode_for(i);
    const double alpha = mode == Mode::A ? 0.0 : angle(rng);
    const double beta = mode == Mode::C ? angle(rng) : 0.0;
    const double lambda = rate(rng);
    const double t = horizon(rng) / lambda;
    const DensityMatrix rho = random_state(rng);

    const DecoherenceConfig config{lambda, build_projectors(mode, alpha, beta)};
    PauliDecomposition analytic = evolve(make_solution(config, rho), t);
    if (inject_fault) analytic.c(0, 0) += 1e-3;
    const PauliDecomposition brute = integrate(config, rho, t).decomposition();

    const double diff = max_difference(analytic, brute);
    if (diff > worst) {
      worst = diff;
      if (diff > tol) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "case %d: mode %d alpha=%.6f beta=%.6f lambda=%.6f t=%.6f "
                      "differs by %.3e",
                      i, static_cast<int>(mode), alpha, beta, lambda, t, diff);
        failing = buf;
      }
    }
  }
  return {"closed_form", "matches RK4 integration",
          failing.empty() ? format_residual("%d cases, worst residual %.3e", cases, worst)
                          : failing,
          worst <= tol};
}

CheckResult check_asymptote(std::mt19937_64& rng, int cases) {
  constexpr double tol = 1e-12;
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  double worst = 0.0;
  for (int i = 0; i < cases; ++i) {
    const AnalyticSolution sol =
        make_solution(Mode::C, angle(rng), angle(rng), 1.0, random_state(rng));
    const Mat3 late = evolve(sol, 40.0).c;
    worst = std::max(worst, (late - asymptotic(sol).c_infinity).cwiseAbs().maxCoeff());
  }
  return {"closed_form", "late-time state reaches the rank-1 asymptote",
          format_residual("%d cases, worst residual %.3e", cases, worst), worst <= tol};
}

CheckResult check_singlet_reduction(std::mt19937_64& rng, int cases) {
  constexpr double tol = 1e-9;
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> horizon(0.05, 3.0);
  const DensityMatrix singlet = bell_state(BellKind::PsiMinus);

  double worst = 0.0;
  for (int i = 0; i < cases; ++i) {
    const double alpha = angle(rng), beta = angle(rng), t = horizon(rng);
    const AnalyticSolution sol = make_solution(Mode::C, alpha, beta, 1.0, singlet);
    Vec3 via_svd = svd3(evolve(sol, t).c).values.cwiseAbs();
    Vec3 via_formula = bell_singlet_singular_values(alpha - beta, 1.0, t);
    std::sort(via_svd.data(), via_svd.data() + 3);
    std::sort(via_formula.data(), via_formula.data() + 3);
    worst = std::max(worst, (via_svd - via_formula).cwiseAbs().maxCoeff());
  }
  return {"closed_form", "singlet radicals match the two-angle evolution",
          format_residual("%d cases, worst residual %.3e", cases, worst), worst <= tol};
}

CheckResult check_svd(std::mt19937_64& rng, int cases) {
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  double worst_recon = 0.0, worst_ortho = 0.0, worst_spectrum = 0.0;
  bool structure_ok = true;
  for (int i = 0; i < cases; ++i) {
    Mat3 c;
    for (int r = 0; r < 3; ++r)
      for (int s = 0; s < 3; ++s) c(r, s) = entry(rng);

    const CorrelationVector f = svd3(c);
    const Mat3 recon =
        f.left_factor * f.values.asDiagonal() * f.right_factor.transpose();
    worst_recon = std::max(worst_recon, (recon - c).cwiseAbs().maxCoeff());
    for (const Mat3& q : {f.left_factor, f.right_factor}) {
      worst_ortho = std::max(
          worst_ortho,
          (q.transpose() * q - Mat3::Identity()).cwiseAbs().maxCoeff());
      structure_ok = structure_ok && std::abs(q.determinant() - 1.0) < 1e-12;
    }
    const Vec3 mag = f.values.cwiseAbs();
    structure_ok = structure_ok && mag(0) >= mag(1) && mag(1) >= mag(2);
    const double det = c.determinant();
    if (std::abs(det) > 1e-12)
      structure_ok = structure_ok && f.values.prod() * det > 0.0;

    Eigen::SelfAdjointEigenSolver<Mat3> es(c.transpose() * c, Eigen::EigenvaluesOnly);
    Vec3 oracle = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().reverse();
    worst_spectrum = std::max(worst_spectrum, (oracle - mag).cwiseAbs().maxCoeff());
  }
  const double worst = std::max({worst_recon, worst_spectrum, worst_ortho});
  return {"geometry", "Jacobi factorization reconstructs and matches spectral oracle",
          format_residual("%d cases, worst residual %.3e", cases, worst),
          structure_ok && worst_recon <= 1e-10 && worst_spectrum <= 1e-10 &&
              worst_ortho <= 1e-12};
}

CheckResult check_membership(std::mt19937_64& rng, int cases) {
  std::exponential_distribution<double> expo(1.0);
  const std::array<Mat4c, 4> bell = {
      bell_state(BellKind::PsiMinus).matrix(), bell_state(BellKind::PsiPlus).matrix(),
      bell_state(BellKind::PhiMinus).matrix(), bell_state(BellKind::PhiPlus).matrix()};

  int disagreements = 0;
  for (int i = 0; i < cases; ++i) {
    Eigen::Vector4d weight;
    for (int k = 0; k < 4; ++k) weight(k) = expo(rng);
    weight /= weight.sum();
    Mat4c rho = Mat4c::Zero();
    for (int k = 0; k < 4; ++k) rho += weight(k) * bell[k];

    const DensityMatrix state(rho);
    const bool octa = membership(svd3(state.decomposition().c)).in_octahedron;
    if (octa != metrics(state).ppt) ++disagreements;
  }

  double worst_corner = 0.0;
  for (const Mat4c& rho : bell) {
    const double margin = membership(svd3(decompose(rho).c)).tetra_margin;
    worst_corner = std::max(worst_corner, std::abs(margin));
  }

  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "%d mixtures, %d octahedron/PPT disagreements, corner margin %.3e",
                cases, disagreements, worst_corner);
  return {"geometry", "octahedron membership coincides with the PPT criterion", buf,
          disagreements == 0 && worst_corner <= 1e-12};
}

CheckResult check_equivalence_seeds(std::mt19937_64& rng, int cases) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

  double worst = 0.0;
  bool verdicts_ok = true;
  for (int i = 0; i < cases; ++i) {
    const double radius = 0.5 * unit(rng);
    const double theta = angle(rng);
    const double span = 1.0 - 2.0 * radius;
    const EquivalenceSeed seed{radius * std::cos(theta), radius * std::sin(theta),
                               span * (2.0 * unit(rng) - 1.0)};
    const ConditionReport report = check_conditions(seed_matrix(seed));
    verdicts_ok = verdicts_ok && report.trace_condition && report.det_condition &&
                  verify_equivalence(seed);
    worst = std::max(worst, grid_sv_residual(seed_matrix(seed)));
  }
  return {"equivalence", "seed trajectories reduce to the one-sided channel",
          format_residual("%d seeds, worst grid residual %.3e", cases, worst),
          verdicts_ok && worst < 1e-9};
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  std::mt19937_64 rng(options.seed);
  const int scale = options.quick ? 1 : 10;

  std::vector<CheckResult> results;
  results.push_back(check_oracle_agreement(rng, 20 * scale, options.inject_fault));
  results.push_back(check_asymptote(rng, 5 * scale));
  results.push_back(check_singlet_reduction(rng, 5 * scale));
  results.push_back(check_svd(rng, 100 * scale));
  results.push_back(check_membership(rng, 50 * scale));
  results.push_back(check_equivalence_seeds(rng, 4 * scale));
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.passed; });
}

}  // namespace spingeo
