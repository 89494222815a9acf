#include "cli_support.hpp"

#include <spingeo/closed_form.hpp>
#include <spingeo/geometry.hpp>
#include <spingeo/verify.hpp>

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <regex>
#include <sstream>
#include <vector>

namespace spingeo::cli {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  return s.substr(begin, s.find_last_not_of(" \t\r\n") - begin + 1);
}

double parse_double(const std::string& text, const char* what) {
  std::string t = trim(text);
  if (t.size() > 1 && t.front() == '+') t.erase(0, 1);  // from_chars rejects it
  double value = 0.0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || end != t.data() + t.size())
    throw UsageError(std::string("cannot parse ") + what + ": '" + text + "'");
  return value;
}

int parse_int(const std::string& text, const char* what) {
  const std::string t = trim(text);
  int value = 0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || end != t.data() + t.size())
    throw UsageError(std::string("cannot parse ") + what + ": '" + text + "'");
  return value;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string::size_type from = 0;
  while (true) {
    const auto at = s.find(sep, from);
    if (at == std::string::npos) {
      parts.push_back(s.substr(from));
      return parts;
    }
    parts.push_back(s.substr(from, at - from));
    from = at + 1;
  }
}

std::vector<double> sample_times(const RunConfig& run) {
  if (!(run.t_max >= 0.0) || !std::isfinite(run.t_max))
    throw DomainError("t_max must be finite and >= 0");
  if (run.t_max == 0.0) return {0.0};
  if (run.samples < 2)
    throw DomainError("need at least 2 samples to span t_max > 0");
  std::vector<double> ts(run.samples);
  for (int k = 0; k < run.samples; ++k)
    ts[k] = run.t_max * static_cast<double>(k) / (run.samples - 1);
  return ts;
}

void require_positive_rate(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw DomainError("lambda must be finite and > 0");
}

struct Row {
  double t;
  PauliDecomposition d;
  Vec3 sv;
  double purity;
  double concurrence;
  bool in_octahedron;
};

Row make_row(double t, const PauliDecomposition& d) {
  Row row{t, d, Vec3::Zero(), 0.0, 0.0, false};
  row.sv = svd3(d.c).values;
  row.in_octahedron = membership(row.sv).in_octahedron;
  const StateMetrics mm = metrics(DensityMatrix(reconstruct(d)));
  row.purity = mm.purity;
  row.concurrence = mm.concurrence;
  return row;
}

constexpr std::array<const char*, 22> kColumns = {
    "t",    "m_x",  "m_y",  "m_z",  "n_x",  "n_y",    "n_z",        "c_xx",
    "c_xy", "c_xz", "c_yx", "c_yy", "c_yz", "c_zx",   "c_zy",       "c_zz",
    "sv1",  "sv2",  "sv3",  "purity", "concurrence", "in_octahedron"};

std::array<double, 19> numeric_fields(const Row& r) {
  return {r.t,
          r.d.m(0), r.d.m(1), r.d.m(2),
          r.d.n(0), r.d.n(1), r.d.n(2),
          r.d.c(0, 0), r.d.c(0, 1), r.d.c(0, 2),
          r.d.c(1, 0), r.d.c(1, 1), r.d.c(1, 2),
          r.d.c(2, 0), r.d.c(2, 1), r.d.c(2, 2),
          r.sv(0), r.sv(1), r.sv(2)};
}

void write_csv(const std::vector<Row>& rows, std::ostream& out) {
  for (std::size_t i = 0; i < kColumns.size(); ++i)
    out << (i ? "," : "") << kColumns[i];
  out << '\n';
  for (const Row& r : rows) {
    for (double v : numeric_fields(r)) out << format_g17(v) << ',';
    out << format_g17(r.purity) << ',' << format_g17(r.concurrence) << ','
        << (r.in_octahedron ? "true" : "false") << '\n';
  }
}

void write_json(const std::vector<Row>& rows, std::ostream& out) {
  nlohmann::ordered_json table = nlohmann::ordered_json::array();
  for (const Row& r : rows) {
    nlohmann::ordered_json obj;
    const auto fields = numeric_fields(r);
    for (std::size_t i = 0; i < fields.size(); ++i) obj[kColumns[i]] = fields[i];
    obj["purity"] = r.purity;
    obj["concurrence"] = r.concurrence;
    obj["in_octahedron"] = r.in_octahedron;
    table.push_back(std::move(obj));
  }
  out << table.dump(2) << '\n';
}

std::string format_vec3(const Vec3& v) {
  return "(" + format_g17(v(0)) + ", " + format_g17(v(1)) + ", " + format_g17(v(2)) +
         ")";
}

void print_matrix(const Mat3& m, std::ostream& out) {
  for (int r = 0; r < 3; ++r) {
    out << "  [" << format_g17(m(r, 0)) << ", " << format_g17(m(r, 1)) << ", "
        << format_g17(m(r, 2)) << "]\n";
  }
}

void print_condition_report(const Mat3& c0, std::ostream& out) {
  const ConditionReport report = check_conditions(c0);
  out << "trace_condition = " << (report.trace_condition ? "ok" : "violated") << '\n'
      << "det_condition = " << (report.det_condition ? "ok" : "violated") << '\n'
      << "trace_residual = " << format_g17(report.trace_residual) << '\n'
      << "det_residual = " << format_g17(report.det_residual) << '\n';
}

}  // namespace

double parse_angle(const std::string& text) {
  static const std::regex grammar(
      R"(^\s*([+-])?\s*([0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?)?\s*(pi)?\s*(?:/\s*([0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, grammar) || (m[2].length() == 0 && m[3].length() == 0))
    throw UsageError("cannot parse angle '" + text +
                     "'; use a number or a pi literal like pi/2, -pi/4, 3pi/10");
  double value = m[2].length() ? parse_double(m[2].str(), "angle") : 1.0;
  if (m[3].length()) value *= std::numbers::pi;
  if (m[4].length()) value /= parse_double(m[4].str(), "angle divisor");
  if (m[1].length() && m[1].str() == "-") value = -value;
  return value;
}

Mode parse_mode(const std::string& text) {
  std::string t = trim(text);
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (t == "a") return Mode::A;
  if (t == "b") return Mode::B;
  if (t == "c") return Mode::C;
  throw UsageError("unknown mode '" + text + "'; expected A, B, or C");
}

OutputFormat parse_format(const std::string& text) {
  const std::string t = trim(text);
  if (t == "csv") return OutputFormat::Csv;
  if (t == "json") return OutputFormat::Json;
  throw UsageError("unknown output format '" + text + "'; expected csv or json");
}

Complex parse_complex(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw UsageError("empty complex number");

  if (t.back() != 'i') return {parse_double(t, "complex number"), 0.0};

  t.pop_back();
  // Split real and imaginary at the last top-level sign (not an exponent sign).
  std::string::size_type cut = std::string::npos;
  for (std::string::size_type k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      cut = k;
      break;
    }
  }
  std::string real = cut == std::string::npos ? "" : t.substr(0, cut);
  std::string imag = cut == std::string::npos ? t : t.substr(cut);
  if (imag.empty() || imag == "+") imag = "1";
  if (imag == "-") imag = "-1";
  return {real.empty() ? 0.0 : parse_double(real, "complex real part"),
          parse_double(imag, "complex imaginary part")};
}

DensityMatrix parse_state(const std::string& spec) {
  const std::string t = trim(spec);
  if (t == "bell-psi-minus") return bell_state(BellKind::PsiMinus);
  if (t == "bell-psi-plus") return bell_state(BellKind::PsiPlus);
  if (t == "bell-phi-minus") return bell_state(BellKind::PhiMinus);
  if (t == "bell-phi-plus") return bell_state(BellKind::PhiPlus);
  if (t == "maximally-mixed") return DensityMatrix(0.25 * Mat4c::Identity());

  if (t.rfind("werner:", 0) == 0)
    return werner(parse_double(t.substr(7), "werner weight"));

  if (t.rfind("seed:", 0) == 0) {
    const auto parts = split(t.substr(5), ',');
    if (parts.size() != 3)
      throw UsageError("seed state needs exactly 3 components, got '" + t + "'");
    const EquivalenceSeed seed{parse_double(parts[0], "seed k1"),
                               parse_double(parts[1], "seed k2"),
                               parse_double(parts[2], "seed k3")};
    PauliDecomposition d;
    d.c = seed_matrix(seed);
    return DensityMatrix(reconstruct(d));
  }

  if (t.find(',') != std::string::npos) {
    const auto parts = split(t, ',');
    if (parts.size() != 16)
      throw UsageError("explicit state needs 16 comma-separated entries, got " +
                       std::to_string(parts.size()));
    Mat4c rho;
    for (int k = 0; k < 16; ++k) rho(k / 4, k % 4) = parse_complex(parts[k]);
    return DensityMatrix(rho);
  }

  throw UsageError("unknown initial state '" + spec + "'");
}

std::map<std::string, std::string> read_config_file(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw UsageError("config line " + std::to_string(lineno) +
                       " is not a key = value pair: '" + stripped + "'");
    const std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (!value.empty() && value.front() == '"') {
      const auto close = value.find('"', 1);
      if (close == std::string::npos)
        throw UsageError("config line " + std::to_string(lineno) +
                         " has an unterminated string");
      value = value.substr(1, close - 1);
    } else {
      const auto hash = value.find('#');
      if (hash != std::string::npos) value = trim(value.substr(0, hash));
    }
    if (key.empty())
      throw UsageError("config line " + std::to_string(lineno) + " has an empty key");
    kv[key] = value;
  }
  return kv;
}

void apply_config(RunConfig& run, const std::map<std::string, std::string>& file,
                  const std::set<std::string>& overridden) {
  for (const auto& [key, value] : file) {
    if (overridden.count(key)) continue;
    if (key == "mode") run.mode = parse_mode(value);
    else if (key == "alpha") run.alpha = parse_angle(value);
    else if (key == "beta") run.beta = parse_angle(value);
    else if (key == "lambda") run.lambda = parse_double(value, "lambda");
    else if (key == "initial_state") run.initial_state = value;
    else if (key == "t_max") run.t_max = parse_double(value, "t_max");
    else if (key == "samples") run.samples = parse_int(value, "samples");
    else if (key == "output_format") run.output_format = parse_format(value);
    else throw UsageError("unknown config key '" + key + "'");
  }
}

std::string format_g17(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void cmd_evolve(const EvolveOptions& options, std::ostream& out) {
  const RunConfig& run = options.run;
  require_positive_rate(run.lambda);
  const DensityMatrix rho = parse_state(run.initial_state);
  const DecoherenceConfig config{run.lambda,
                                 build_projectors(run.mode, run.alpha, run.beta)};
  const AnalyticSolution sol = make_solution(config, rho);

  std::vector<Row> rows;
  for (double t : sample_times(run)) {
    const PauliDecomposition d = options.oracle
                                     ? integrate(config, rho, t, options.dt).decomposition()
                                     : evolve(sol, t);
    rows.push_back(make_row(t, d));
  }
  if (run.output_format == OutputFormat::Csv) write_csv(rows, out);
  else write_json(rows, out);
}

void cmd_crossing(const RunConfig& run, std::ostream& out) {
  require_positive_rate(run.lambda);
  const AnalyticSolution sol = make_solution(
      DecoherenceConfig{run.lambda, build_projectors(run.mode, run.alpha, run.beta)},
      parse_state(run.initial_state));
  const CrossingResult result = separability_crossing(sol);

  switch (result.status) {
    case CrossingStatus::AlreadySeparable:
      out << "status = already-separable\nlambda_t = 0\n";
      break;
    case CrossingStatus::Crossed:
      out << "status = crossed\nlambda_t = " << format_g17(result.lambda_t) << '\n';
      break;
    case CrossingStatus::NotOnGrid:
      out << "status = none\nasymptotic_boundary = "
          << (result.asymptotic_boundary ? "true" : "false") << '\n';
      break;
  }
  out << "correlation_vector = " << format_vec3(result.at_crossing.values) << '\n';
}

void cmd_asymptote(const RunConfig& run, std::ostream& out) {
  require_positive_rate(run.lambda);
  const AnalyticSolution sol = make_solution(
      DecoherenceConfig{run.lambda, build_projectors(run.mode, run.alpha, run.beta)},
      parse_state(run.initial_state));
  const AsymptoticState inf = asymptotic(sol);
  out << "w = " << format_g17(inf.w) << '\n'
      << "correlation_vector = " << format_vec3(inf.correlation_vector) << '\n'
      << "c_infinity =\n";
  print_matrix(inf.c_infinity, out);
}

void cmd_equivalence(const EquivalenceOptions& options, std::ostream& out) {
  if (options.seed.has_value() == options.matrix.has_value())
    throw UsageError("equivalence needs either a seed k1 k2 k3 or --matrix");

  if (options.seed) {
    const EquivalenceSeed& seed = *options.seed;
    const Mat3 c0 = seed_matrix(seed);
    out << "matrix =\n";
    print_matrix(c0, out);
    print_condition_report(c0, out);
    const bool physical = is_physical_seed(seed);
    out << "physical = " << (physical ? "yes" : "no") << '\n';
    if (!physical)
      throw DomainError("seed violates 2 sqrt(k1^2 + k2^2) + k3 <= 1, k3 >= -1");
    out << "equivalent = " << (verify_equivalence(seed, options.grid) ? "yes" : "no")
        << '\n';
    return;
  }

  const Mat3& c0 = *options.matrix;
  out << "matrix =\n";
  print_matrix(c0, out);
  print_condition_report(c0, out);
  out << "physical = " << (membership(svd3(c0)).in_tetrahedron ? "yes" : "no") << '\n'
      << "equivalent = "
      << (grid_sv_residual(c0, options.grid) < 1e-9 ? "yes" : "no") << '\n';
}

int cmd_verify(const VerifyCliOptions& options, std::ostream& out) {
  const auto results =
      run_verification({options.quick, options.seed, options.inject_fault});

  const char* green = options.color ? "\033[32m" : "";
  const char* red = options.color ? "\033[31m" : "";
  const char* reset = options.color ? "\033[0m" : "";
  int failures = 0;
  for (const auto& r : results) {
    if (!r.passed) ++failures;
    out << (r.passed ? green : red) << (r.passed ? "ok  " : "FAIL") << reset << "  ["
        << r.module << "] " << r.property << ": " << r.detail << '\n';
  }
  if (failures == 0) {
    out << "all " << results.size() << " checks passed\n";
    return 0;
  }
  out << failures << " of " << results.size() << " checks failed\n";
  return 3;
}

}  // namespace spingeo::cli
