#ifndef SPINGEO_CLI_SUPPORT_HPP
#define SPINGEO_CLI_SUPPORT_HPP

#include <spingeo/decoherence.hpp>
#include <spingeo/equivalence.hpp>
#include <spingeo/states.hpp>
#include <spingeo/types.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>

namespace spingeo::cli {

/// Malformed command-line or config-file input; maps to exit code 1.
struct UsageError : Error {
  using Error::Error;
};

enum class OutputFormat { Csv, Json };

/// Shared run parameters. The config file uses exactly these field names as
/// keys; command-line flags override file values, which override defaults.
struct RunConfig {
  Mode mode = Mode::A;
  double alpha = 0.0;
  double beta = 0.0;
  double lambda = 1.0;
  std::string initial_state = "bell-psi-minus";
  double t_max = 3.0;
  int samples = 61;
  OutputFormat output_format = OutputFormat::Csv;
};

/// Angle literal: a plain number, or a multiple of pi such as "pi/2",
/// "-pi/4", "3pi/10", "2pi", "1.5pi". Throws UsageError on anything else.
double parse_angle(const std::string& text);

/// Mode letter a/b/c, case-insensitive.
Mode parse_mode(const std::string& text);

OutputFormat parse_format(const std::string& text);

/// One complex number: "0.5", "-i", "1e-3i", "0.25+0.25i", "1-2.5i".
Complex parse_complex(const std::string& text);

/// Initial-state specifier:
///   bell-psi-minus | bell-psi-plus | bell-phi-minus | bell-phi-plus
///   maximally-mixed
///   werner:X             Werner mixture with singlet weight X
///   seed:K1,K2,K3        Bloch-free state with the equivalence-seed matrix
///   e00,e01,...,e33      16 complex entries, row-major
DensityMatrix parse_state(const std::string& spec);

/// key = value lines, # comments, quoted or bare values.
std::map<std::string, std::string> read_config_file(std::istream& in);

/// Apply file values to fields not already fixed on the command line
/// (`overridden` holds field names set by flags). Unknown keys are errors.
void apply_config(RunConfig& run, const std::map<std::string, std::string>& file,
                  const std::set<std::string>& overridden);

/// Shortest 17-significant-digit decimal form, identical on every run.
std::string format_g17(double value);

struct EvolveOptions {
  RunConfig run;
  bool oracle = false;  ///< integrate numerically instead of using closed forms
  double dt = 0.0;      ///< oracle step; 0 picks the 1e-3 / lambda default
};

/// Trajectory table: t, Bloch vectors, correlation entries, singular values,
/// purity, concurrence, octahedron membership. One row per sample.
void cmd_evolve(const EvolveOptions& options, std::ostream& out);

void cmd_crossing(const RunConfig& run, std::ostream& out);

void cmd_asymptote(const RunConfig& run, std::ostream& out);

struct EquivalenceOptions {
  std::optional<EquivalenceSeed> seed;
  std::optional<Mat3> matrix;
  int grid = 12;
};

/// Condition report for a seed or an explicit correlation matrix. An
/// unphysical seed still prints its report before the DomainError escapes.
void cmd_equivalence(const EquivalenceOptions& options, std::ostream& out);

struct VerifyCliOptions {
  bool quick = false;
  std::uint64_t seed = 12345;
  bool inject_fault = false;
  bool color = false;
};

/// Run the verification suite; returns 0 when every check passes, 3 otherwise.
int cmd_verify(const VerifyCliOptions& options, std::ostream& out);

}  // namespace spingeo::cli

#endif
