#ifndef SPINGEO_DECOHERENCE_HPP
#define SPINGEO_DECOHERENCE_HPP

#include <spingeo/states.hpp>
#include <spingeo/types.hpp>

#include <array>

namespace spingeo {

/// Projector family selector. A: both qubits measured along z. B: the first
/// qubit's measurement axis is tilted by alpha about y. C: independent tilts
/// alpha (first qubit) and beta (second qubit).
enum class Mode { A, B, C };

/// Four rank-1 product projectors generating the decoherence channel.
struct ProjectorSet {
  Mode mode = Mode::A;
  double alpha = 0.0;
  double beta = 0.0;
  std::array<Mat4c, 4> projectors;
};

/// Build the projector family for a mode. Mode A takes no angles, mode B only
/// alpha; passing an angle a mode does not use throws DomainError, as do
/// non-finite angles.
ProjectorSet build_projectors(Mode mode, double alpha = 0.0, double beta = 0.0);

struct DecoherenceConfig {
  double lambda = 1.0;
  ProjectorSet projectors;
};

/// Generator of the purely decohering semigroup,
///   D(rho) = lambda (rho - sum_k P_k rho P_k).
/// Linear in rho; accepts any 4x4 matrix. Throws DomainError for lambda < 0.
Mat4c dissipator(const DecoherenceConfig& config, const Mat4c& rho);

/// Integrate d(rho)/dt = -D(rho) from 0 to t with fixed-step classical RK4.
/// Default step is 1e-3 / lambda; a shorter final step lands exactly on t.
/// The result is re-validated and drift past the structural tolerances is
/// reported as NumericError. This brute-force path is the reference the
/// closed-form solutions are checked against.
DensityMatrix integrate(const DecoherenceConfig& config, const DensityMatrix& initial,
                        double t, double dt = 0.0);

}  // namespace spingeo

#endif
