#include "cli_support.hpp"

#include <spingeo/types.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <string>

#include <unistd.h>

namespace {

using namespace spingeo;
using namespace spingeo::cli;

/// Flags backing the RunConfig fields. Values arrive as strings so pi
/// literals and state specs get tailored errors; config-file values fill in
/// whatever the command line left untouched.
struct RunFlags {
  std::string mode, alpha, beta, initial_state, config, t_max, samples, format;
  double lambda = 0.0;
  CLI::Option *mode_opt = nullptr, *alpha_opt = nullptr, *beta_opt = nullptr,
              *lambda_opt = nullptr, *state_opt = nullptr, *config_opt = nullptr,
              *tmax_opt = nullptr, *samples_opt = nullptr, *format_opt = nullptr;

  void attach(CLI::App& cmd, bool with_output_fields) {
    mode_opt = cmd.add_option("--mode", mode, "projector family: A, B, or C");
    alpha_opt =
        cmd.add_option("--alpha", alpha, "first-qubit tilt (number or pi literal)");
    beta_opt = cmd.add_option("--beta", beta, "second-qubit tilt, mode C only");
    lambda_opt = cmd.add_option("--lambda", lambda, "decoherence rate (> 0)");
    state_opt = cmd.add_option("--initial-state,--state", initial_state,
                               "preset name, werner:X, seed:K1,K2,K3, or 16 entries");
    if (with_output_fields) {
      tmax_opt = cmd.add_option("--t-max", t_max, "final time (>= 0)");
      samples_opt =
          cmd.add_option("--samples", samples, "row count (>= 2 when t-max > 0)");
      format_opt =
          cmd.add_option("--output-format,--format", format, "csv or json");
    }
    config_opt = cmd.add_option(
        "--config", config,
        "key = value file with RunConfig field names; flags override it");
  }

  RunConfig resolve() const {
    RunConfig run;
    std::set<std::string> overridden;
    const auto take = [&overridden](const CLI::Option* opt, const std::string& name,
                                    const std::function<void()>& assign) {
      if (opt != nullptr && opt->count() > 0) {
        assign();
        overridden.insert(name);
      }
    };
    take(mode_opt, "mode", [&] { run.mode = parse_mode(mode); });
    take(alpha_opt, "alpha", [&] { run.alpha = parse_angle(alpha); });
    take(beta_opt, "beta", [&] { run.beta = parse_angle(beta); });
    take(lambda_opt, "lambda", [&] { run.lambda = lambda; });
    take(state_opt, "initial_state", [&] { run.initial_state = initial_state; });
    take(tmax_opt, "t_max", [&] {
      std::stringstream ss(t_max);
      if (!(ss >> run.t_max) || !ss.eof())
        throw UsageError("cannot parse t-max '" + t_max + "'");
    });
    take(samples_opt, "samples", [&] {
      std::stringstream ss(samples);
      if (!(ss >> run.samples) || !ss.eof())
        throw UsageError("cannot parse samples '" + samples + "'");
    });
    take(format_opt, "output_format",
         [&] { run.output_format = parse_format(format); });

    if (config_opt->count() > 0) {
      std::ifstream file(config);
      if (!file) throw UsageError("cannot open config file '" + config + "'");
      apply_config(run, read_config_file(file), overridden);
    }
    return run;
  }
};

void write_or_print(const std::string& path,
                    const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream file(path);
  if (!file) throw UsageError("cannot open output file '" + path + "'");
  fn(file);
}

Mat3 parse_matrix9(const std::string& text) {
  Mat3 c;
  std::stringstream ss(text);
  std::string item;
  int k = 0;
  while (std::getline(ss, item, ',')) {
    if (k >= 9) throw UsageError("--matrix needs exactly 9 entries");
    std::stringstream entry(item);
    if (!(entry >> c(k / 3, k % 3)) || !(entry >> std::ws).eof())
      throw UsageError("cannot parse matrix entry '" + item + "'");
    ++k;
  }
  if (k != 9) throw UsageError("--matrix needs exactly 9 entries");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-qubit projector decoherence: trajectories, spin geometry, "
               "and mode-equivalence checks"};
  app.require_subcommand(1);
  int exit_code = 0;

  auto* evolve_cmd = app.add_subcommand("evolve", "emit a trajectory table");
  auto evolve_flags = std::make_shared<RunFlags>();
  evolve_flags->attach(*evolve_cmd, true);
  auto output_path = std::make_shared<std::string>();
  auto oracle = std::make_shared<bool>(false);
  auto dt = std::make_shared<double>(0.0);
  evolve_cmd->add_option("--output,-o", *output_path,
                         "write the table here instead of stdout");
  evolve_cmd->add_flag("--oracle", *oracle,
                       "integrate numerically instead of using closed forms");
  evolve_cmd->add_option("--dt", *dt, "oracle integrator step (default 1e-3 / lambda)");
  evolve_cmd->callback([=]() {
    const EvolveOptions options{evolve_flags->resolve(), *oracle, *dt};
    write_or_print(*output_path,
                   [&options](std::ostream& out) { cmd_evolve(options, out); });
  });

  auto* crossing_cmd =
      app.add_subcommand("crossing", "first entangled-to-separable transition");
  auto crossing_flags = std::make_shared<RunFlags>();
  crossing_flags->attach(*crossing_cmd, false);
  crossing_cmd->callback([=]() { cmd_crossing(crossing_flags->resolve(), std::cout); });

  auto* asymptote_cmd =
      app.add_subcommand("asymptote", "infinite-time correlation matrix and weight");
  auto asymptote_flags = std::make_shared<RunFlags>();
  asymptote_flags->attach(*asymptote_cmd, false);
  asymptote_cmd->callback(
      [=]() { cmd_asymptote(asymptote_flags->resolve(), std::cout); });

  auto* equivalence_cmd = app.add_subcommand(
      "equivalence", "reduction conditions for an initial correlation matrix");
  auto seed_values = std::make_shared<std::vector<double>>();
  auto matrix_text = std::make_shared<std::string>();
  auto grid = std::make_shared<int>(12);
  equivalence_cmd->add_option("seed", *seed_values, "seed components k1 k2 k3")
      ->expected(0, 3);
  auto* matrix_opt = equivalence_cmd->add_option(
      "--matrix", *matrix_text, "9 comma-separated entries, row-major");
  equivalence_cmd->add_option("--grid", *grid, "angle grid points per axis");
  equivalence_cmd->callback([=]() {
    EquivalenceOptions options;
    options.grid = *grid;
    if (!seed_values->empty()) {
      if (seed_values->size() != 3)
        throw UsageError("seed needs exactly 3 components k1 k2 k3");
      options.seed =
          EquivalenceSeed{(*seed_values)[0], (*seed_values)[1], (*seed_values)[2]};
    }
    if (matrix_opt->count() > 0) options.matrix = parse_matrix9(*matrix_text);
    cmd_equivalence(options, std::cout);
  });

  auto* verify_cmd = app.add_subcommand("verify", "run the built-in verification suite");
  auto verify_opts = std::make_shared<VerifyCliOptions>();
  verify_cmd->add_flag("--quick", verify_opts->quick, "smaller case counts");
  verify_cmd->add_option("--seed", verify_opts->seed, "RNG seed (default 12345)");
  verify_cmd->add_flag("--inject-fault", verify_opts->inject_fault)->group("");
  verify_cmd->callback([verify_opts, &exit_code]() {
    verify_opts->color =
        isatty(fileno(stdout)) != 0 && std::getenv("NO_COLOR") == nullptr;
    exit_code = cmd_verify(*verify_opts, std::cout);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return exit_code;
}
