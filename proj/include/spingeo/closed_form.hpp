#ifndef SPINGEO_CLOSED_FORM_HPP
#define SPINGEO_CLOSED_FORM_HPP

#include <spingeo/decoherence.hpp>
#include <spingeo/pauli.hpp>
#include <spingeo/states.hpp>
#include <spingeo/types.hpp>

namespace spingeo {

/// Exact solution of the pure-decoherence master equation for one initial
/// state. Mode A is stored as alpha = beta = 0 and mode B as beta = 0, so a
/// single mode-C evaluation path serves all three families; nesting of the
/// modes is then exact down to the last bit.
struct AnalyticSolution {
  Mode mode = Mode::A;
  double alpha = 0.0;
  double beta = 0.0;
  double lambda = 1.0;
  PauliDecomposition initial;
};

AnalyticSolution make_solution(const DecoherenceConfig& config,
                               const DensityMatrix& initial);
AnalyticSolution make_solution(Mode mode, double alpha, double beta, double lambda,
                               const DensityMatrix& initial);

/// Correlation matrix at time t under the tilted-projector channel: every
/// entry damps by e^(-lambda t) except the rank-1 component along
/// (sin a, 0, cos a) (x) (sin b, 0, cos b), which survives with weight
/// u.c(0).v. Standalone because the equivalence checks drive it with raw
/// matrices that need not come from a physical state.
Mat3 evolve_correlation(double alpha, double beta, double lambda, const Mat3& c0,
                        double t);

/// Bloch vectors and correlation matrix at time t >= 0. t = 0 returns the
/// initial decomposition unchanged.
PauliDecomposition evolve(const AnalyticSolution& sol, double t);

/// evolve() followed by reconstruction and validation.
DensityMatrix evolve_state(const AnalyticSolution& sol, double t);

struct AsymptoticState {
  double w = 0.0;           ///< surviving correlation weight u.c(0).v
  Mat3 c_infinity;          ///< w * outer(u, v), a rank-1 matrix (or zero)
  Vec3 correlation_vector;  ///< singular-value triple (|w|, 0, 0) in axis order (0, 0, |w|)
};

/// Infinite-time limit of the solution. Bloch vectors keep only their
/// component along the surviving axis; the correlation matrix collapses to
/// rank one.
AsymptoticState asymptotic(const AnalyticSolution& sol);

/// Singular values (c1, c2, c3) of the evolved Bell-singlet correlation
/// matrix as closed radicals in the tilt difference delta = alpha - beta
/// (mode B: delta = alpha). Written in a form free of e^(+lambda t) factors
/// so it stays finite for arbitrarily large t. A radicand below -1e-12 is
/// reported as NumericError; tiny negatives round up to zero.
Vec3 bell_singlet_singular_values(double delta, double lambda, double t);

/// Small-angle expansion of (c2, c3) above, accurate to o(delta^2).
Eigen::Vector2d bell_singlet_expansion(double delta, double lambda, double t);

/// Eigenvalues of the evolved Bell-singlet correlation matrix:
/// (-E, -E, -(cos^2 delta + E sin^2 delta)) with E = e^(-lambda t).
Vec3 bell_singlet_eigenvalues(double delta, double lambda, double t);

}  // namespace spingeo

#endif
