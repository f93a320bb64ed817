#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "entwalk/classical.hpp"
#include "entwalk/io.hpp"
#include "entwalk/metrics.hpp"
#include "entwalk/parallel.hpp"
#include "entwalk/spectral.hpp"
#include "entwalk/stationary.hpp"
#include "entwalk/validate.hpp"
#include "entwalk/walk.hpp"

namespace {

using namespace entwalk;

struct OutputFlags {
  std::string format = "csv";
  std::string prefix;
  bool log2 = false;
  bool no_timestamp = false;
};

void add_output_flags(CLI::App* cmd, OutputFlags& flags) {
  cmd->add_option("--format", flags.format, "serialization format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--output", flags.prefix, "output file prefix; stdout when omitted");
  cmd->add_flag("--log2", flags.log2, "report entropies in bits instead of nats");
  cmd->add_flag("--no-timestamp", flags.no_timestamp, "omit the generated-at header line");
}

OutputOptions output_options(const OutputFlags& flags, const std::string& command_line) {
  OutputOptions opts;
  opts.timestamp = !flags.no_timestamp;
  opts.log2_entropy = flags.log2;
  opts.command_line = command_line;
  return opts;
}

std::string joined_command_line(int argc, char** argv) {
  std::string out = "entwalk";
  for (int i = 1; i < argc; ++i) {
    out += ' ';
    out += argv[i];
  }
  return out;
}

// `deliver` routes one document to PREFIX+name or, without a prefix, stdout;
// consecutive stdout documents get a separating blank line.
class Sink {
 public:
  explicit Sink(std::string prefix) : prefix_(std::move(prefix)) {}

  void deliver(const std::string& name, const std::string& body) {
    if (prefix_.empty()) {
      if (!first_) std::fputc('\n', stdout);
      std::fputs(body.c_str(), stdout);
      first_ = false;
    } else {
      write_text_file(prefix_ + name, body);
    }
  }

 private:
  std::string prefix_;
  bool first_ = true;
};

std::vector<ProbabilityDistribution> walk_distribution_series(const WalkConfig& config) {
  std::vector<ProbabilityDistribution> out;
  out.reserve(config.steps + 1);
  const CoinOperator coin = build_coin(config.n, config.coin);
  StateVector state = initial_state_vector(config);
  out.push_back(probabilities(state));
  for (int t = 0; t < config.steps; ++t) {
    state = apply_shift(apply_coin(std::move(state), coin));
    out.push_back(probabilities(state));
  }
  return out;
}

void check_probability_sums(const std::vector<ProbabilityDistribution>& per_step) {
  for (std::size_t t = 0; t < per_step.size(); ++t) {
    const double defect = std::abs(per_step[t].total() - 1.0);
    if (defect > 1e-9) {
      throw std::runtime_error("probability column at step " + std::to_string(t) +
                               " sums to 1 only within " + format_double(defect));
    }
  }
}

Eigen::VectorXcd to_vector(const std::vector<cplx>& values) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) out[static_cast<Eigen::Index>(i)] = values[i];
  return out;
}

std::pair<int, int> parse_qubit_range(const std::string& text) {
  const auto parse_int = [&](const std::string& part) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(part, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("--n: cannot parse '" + text + "'");
    }
    if (pos != part.size()) throw std::invalid_argument("--n: cannot parse '" + text + "'");
    return v;
  };
  const std::size_t dots = text.find("..");
  int lo = 0, hi = 0;
  if (dots == std::string::npos) {
    lo = hi = parse_int(text);
  } else {
    lo = parse_int(text.substr(0, dots));
    hi = parse_int(text.substr(dots + 2));
  }
  if (lo < 1 || hi > max_qubits || lo > hi) {
    throw std::invalid_argument("--n: range must satisfy 1 <= lo <= hi <= " +
                                std::to_string(max_qubits));
  }
  return {lo, hi};
}

MetricsReport classical_report(int step, double p, double threshold) {
  const ProbabilityDistribution dist = classical_distribution({step, p});
  const PositionMoments moments = position_moments(dist);
  MetricsReport r;
  r.step = step;
  r.variance = moments.variance;
  r.std_dev = moments.std_dev;
  r.expected_position = moments.expected_position;
  r.support_count = support_count(dist, threshold);
  r.shannon_entropy_position = shannon_entropy(dist);
  r.symmetry_defect = symmetry_defect(dist);
  // No coherent register: the entanglement-sensitive columns stay zero.
  r.von_neumann_entropy_position = 0.0;
  r.shannon_entropy_coin = 0.0;
  return r;
}

int cmd_run(int n, int steps, double threshold, const std::string& initial,
            const OutputFlags& flags, const OutputOptions& opts) {
  WalkConfig config = WalkConfig::standard(n, steps);
  if (!initial.empty()) {
    config.initial_state.coin_amplitudes = to_vector(parse_complex_list(initial));
  }
  config.validate();

  const std::vector<ProbabilityDistribution> per_step = walk_distribution_series(config);
  check_probability_sums(per_step);
  const std::vector<MetricsReport> series = metrics_series(config, threshold);

  Sink sink(flags.prefix);
  if (flags.format == "json") {
    sink.deliver(".json", run_json(per_step, series, opts));
  } else {
    sink.deliver(".distribution.csv", distribution_series_csv(per_step, opts));
    sink.deliver(".metrics.csv", metrics_series_csv(series, opts));
  }
  return 0;
}

int cmd_sweep(const std::string& range, int steps, double threshold, const OutputFlags& flags,
              const OutputOptions& opts) {
  const auto [lo, hi] = parse_qubit_range(range);
  std::vector<int> ns;
  for (int n = lo; n <= hi; ++n) ns.push_back(n);

  std::vector<std::vector<MetricsReport>> per_n(ns.size());
  parallel_for(ns.size(), [&](std::size_t i) {
    per_n[i] = metrics_series(WalkConfig::standard(ns[i], steps), threshold);
  });

  std::vector<MetricsReport> classical_series;
  classical_series.reserve(steps + 1);
  for (int t = 0; t <= steps; ++t) classical_series.push_back(classical_report(t, 0.5, threshold));

  Sink sink(flags.prefix);
  if (flags.format == "json") {
    sink.deliver(".json", sweep_json(ns, per_n, classical_series, opts));
  } else {
    for (std::size_t i = 0; i < ns.size(); ++i) {
      sink.deliver(".n" + std::to_string(ns[i]) + ".metrics.csv",
                   metrics_series_csv(per_n[i], opts));
    }
    sink.deliver(".classical.metrics.csv", metrics_series_csv(classical_series, opts));
  }
  return 0;
}

int cmd_classical(int steps, double p, double threshold, const OutputFlags& flags,
                  const OutputOptions& opts) {
  ClassicalWalkConfig config{steps, p};
  config.validate();

  std::vector<ProbabilityDistribution> per_step;
  std::vector<MetricsReport> series;
  per_step.reserve(steps + 1);
  series.reserve(steps + 1);
  for (int t = 0; t <= steps; ++t) {
    per_step.push_back(classical_distribution({t, p}));
    series.push_back(classical_report(t, p, threshold));
  }
  check_probability_sums(per_step);

  Sink sink(flags.prefix);
  if (flags.format == "json") {
    sink.deliver(".json", run_json(per_step, series, opts));
  } else {
    sink.deliver(".distribution.csv", distribution_series_csv(per_step, opts));
    sink.deliver(".metrics.csv", metrics_series_csv(series, opts));
  }
  return 0;
}

int cmd_spectral_check(int n, int steps, int points, const std::string& output) {
  ValidationReport report;
  const auto check = [&report](const std::string& name, auto&& fn) {
    ValidationItem item;
    item.name = name;
    try {
      item.passed = true;
      fn(item.passed, item.detail);
    } catch (const std::exception& err) {
      item.passed = false;
      item.detail = err.what();
    }
    report.items.push_back(std::move(item));
  };

  const MomentumGrid grid = MomentumGrid::with_points(points);
  std::vector<SpectralEntry> entries;
  entries.reserve(grid.num_points);

  check("closed-form construction", [&](bool&, std::string& detail) {
    for (int j = 0; j < grid.num_points; ++j) {
      entries.push_back(closed_form_eigensystem(n, grid.point(j)));
    }
    detail = std::to_string(grid.num_points) + " grid points, n = " + std::to_string(n);
  });

  check("branch norm identity", [&](bool& ok, std::string& detail) {
    double worst = 0.0;
    for (const SpectralEntry& e : entries) {
      worst = std::max(worst,
                       std::abs(e.norm_plus * e.norm_minus - (6.0 + 2.0 * std::cos(e.k))));
    }
    ok = worst <= 1e-10;
    detail = "max |N+N- - (6+2cos k)| = " + format_double(worst);
  });

  check("eigenvalue magnitude", [&](bool& ok, std::string& detail) {
    double worst = 0.0;
    for (const SpectralEntry& e : entries) {
      for (Eigen::Index b = 0; b < e.eigenvalues.size(); ++b) {
        worst = std::max(worst, std::abs(std::abs(e.eigenvalues[b]) - 1.0));
      }
    }
    ok = worst <= 1e-12;
    detail = "max ||Lambda|-1| = " + format_double(worst);
  });

  check("eigenpair residual", [&](bool& ok, std::string& detail) {
    double worst = 0.0;
    for (const SpectralEntry& e : entries) {
      const Eigen::MatrixXcd op = momentum_step_operator(n, e.k);
      worst = std::max(worst, (op * e.eigenvectors -
                               e.eigenvectors * e.eigenvalues.asDiagonal())
                                  .cwiseAbs()
                                  .maxCoeff());
    }
    ok = worst <= 1e-8;
    detail = "max |U V - V diag| = " + format_double(worst);
  });

  check("eigenvector frame", [&](bool& ok, std::string& detail) {
    double worst = 0.0;
    const Eigen::Index dim = Eigen::Index(1) << n;
    for (const SpectralEntry& e : entries) {
      worst = std::max(worst, (e.eigenvectors.adjoint() * e.eigenvectors -
                               Eigen::MatrixXcd::Identity(dim, dim))
                                  .cwiseAbs()
                                  .maxCoeff());
    }
    ok = worst <= 1e-10;
    detail = "max |V^dag V - I| = " + format_double(worst);
  });

  check("position round-trip", [&](bool& ok, std::string& detail) {
    const WalkConfig config = WalkConfig::standard(n, steps);
    const StateVector direct = evolve(config);
    const StateVector viaK = spectral_evolve(config);
    const double worst = (direct.amplitudes - viaK.amplitudes).cwiseAbs().maxCoeff();
    ok = worst <= 1e-10;
    detail = "max amplitude gap at T = " + std::to_string(steps) + ": " + format_double(worst);
  });

  std::string body = report.to_text();
  body += "front velocity: " + format_double(front_velocity(n)) + " sites/step (n = " +
          std::to_string(n) + ")\n";
  if (output.empty()) {
    std::fputs(body.c_str(), stdout);
  } else {
    write_text_file(output, body);
  }
  return report.all_passed() ? 0 : 3;
}

int cmd_stationary(int n, int steps, const OutputFlags& flags, const OutputOptions& opts) {
  if (steps < 1) throw std::invalid_argument("--steps: need at least one step");
  const BranchLabel branch = BranchLabel::extremal_plus(n);
  Sink sink(flags.prefix);

  // Root table for the steepest branch across reduced velocities.
  {
    std::string body;
    body += "# entwalk stationary points, n = " + std::to_string(n) + ", branch spread " +
            std::to_string(branch.spread()) + "\n";
    if (!opts.command_line.empty()) body += "# command: " + opts.command_line + "\n";
    body += "x_over_t,num_roots,k0,phi2\n";
    const double bound = branch.spread() / (2.0 * std::sqrt(2.0));
    for (int j = 0; j <= 40; ++j) {
      const double v = 0.025 * j * std::max(1.0, std::ceil(bound));
      const std::vector<double> roots = stationary_points(branch, v);
      body += format_double(v) + ',' + std::to_string(roots.size());
      if (roots.empty()) {
        body += ",nan,nan\n";
      } else {
        body += ',' + format_double(roots.front()) + ',' +
                format_double(phase_derivatives(branch, v, roots.front()).phi2) + '\n';
      }
    }
    sink.deliver(".points.csv", body);
  }

  const ProbabilityDistribution dist = probabilities(evolve(WalkConfig::standard(n, steps)));

  // Peak summary: group-velocity prediction against the simulated front peak,
  // the outermost local maximum still carrying a tenth of the largest
  // positive-side probability. Interior caustics and the evanescent tail
  // beyond the front are both skipped.
  {
    const double v = front_velocity(n);
    double positive_max = 0.0;
    for (int x = 1; x <= dist.max_position(); ++x) {
      positive_max = std::max(positive_max, dist.at(x));
    }
    int best_x = 0;
    for (int x = dist.max_position(); x >= 1; --x) {
      const double p = dist.at(x);
      if (p >= 0.1 * positive_max && p > dist.at(x - 1) && p >= dist.at(x + 1)) {
        best_x = x;
        break;
      }
    }
    std::string body;
    body += "# entwalk peak summary, n = " + std::to_string(n) + ", T = " +
            std::to_string(steps) + "\n";
    body += "front_velocity,predicted_peak,simulated_peak,gap\n";
    body += format_double(v) + ',' + format_double(v * steps) + ',' + std::to_string(best_x) +
            ',' + format_double(std::abs(v * steps - best_x)) + '\n';
    sink.deliver(".peak.csv", body);
  }

  // For the two-component walk the reduced description walks a half-spaced
  // lattice; position y of the simulation corresponds to coordinate y/2.
  if (n == 1) {
    const BranchLabel minus = BranchLabel::extremal_minus(n);
    std::string body;
    body += "# entwalk asymptotic band, n = 1, T = " + std::to_string(steps) + "\n";
    body += "position,predicted,actual,rel_error\n";
    const int lo = static_cast<int>(std::ceil(0.1 * steps));
    const int hi = static_cast<int>(std::floor(0.6 * steps));
    for (int y = lo; y <= hi; ++y) {
      if ((y + steps) % 2 != 0) continue;  // off-parity sites carry no weight
      const Eigen::VectorXcd amp = stationary_phase_amplitude(branch, steps, y / 2.0) +
                                   stationary_phase_amplitude(minus, steps, y / 2.0);
      const double predicted = amp.squaredNorm();
      const double actual = dist.at(y);
      const double rel = actual > 0.0 ? std::abs(predicted - actual) / actual : 0.0;
      body += std::to_string(y) + ',' + format_double(predicted) + ',' + format_double(actual) +
              ',' + format_double(rel) + '\n';
    }
    sink.deliver(".band.csv", body);
  }
  return 0;
}

int cmd_validate(int oracle_depth, int max_qubits_checked, bool inject_fault,
                 const std::string& format, const std::string& output) {
  ValidationOptions options;
  options.oracle_depth = oracle_depth;
  options.max_qubits_checked = max_qubits_checked;
  options.fault = inject_fault ? FaultInjection::coin_scale : FaultInjection::none;

  const ValidationReport report = run_validation(options);
  const std::string body = format == "json" ? report.to_json() : report.to_text();
  if (output.empty()) {
    std::fputs(body.c_str(), stdout);
  } else {
    write_text_file(output, body);
  }
  return report.all_passed() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulator and spectral toolkit for entangled-coin quantum walks"};
  app.require_subcommand(1);
  const std::string command_line = joined_command_line(argc, argv);

  int run_n = 1, run_steps = 0;
  double run_threshold = 1e-4;
  std::string run_initial;
  OutputFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "evolve one walk and emit its series");
  run->add_option("--n", run_n, "coin qubits")->required()->check(CLI::Range(1, max_qubits));
  run->add_option("--steps", run_steps, "number of steps")
      ->required()
      ->check(CLI::NonNegativeNumber);
  run->add_option("--threshold", run_threshold, "support-count cutoff")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  run->add_option("--initial", run_initial,
                  "initial coin amplitudes, comma-separated re+imj values of length 2^n");
  add_output_flags(run, run_flags);

  std::string sweep_range;
  int sweep_steps = 0;
  double sweep_threshold = 1e-4;
  OutputFlags sweep_flags;
  CLI::App* sweep = app.add_subcommand("sweep", "metric series across a range of qubit counts");
  sweep->add_option("--n", sweep_range, "qubit count or range, e.g. 3 or 1..7")->required();
  sweep->add_option("--steps", sweep_steps, "number of steps")
      ->required()
      ->check(CLI::NonNegativeNumber);
  sweep->add_option("--threshold", sweep_threshold, "support-count cutoff")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  add_output_flags(sweep, sweep_flags);

  int classical_steps = 0;
  double classical_p = 0.5, classical_threshold = 1e-4;
  OutputFlags classical_flags;
  CLI::App* classical = app.add_subcommand("classical", "binomial random-walk baseline series");
  classical->add_option("--steps", classical_steps, "number of steps")
      ->required()
      ->check(CLI::NonNegativeNumber);
  classical->add_option("--p", classical_p, "probability of a right step")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  classical->add_option("--threshold", classical_threshold, "support-count cutoff")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  add_output_flags(classical, classical_flags);

  int spectral_n = 3, spectral_steps = 30, spectral_points = 1000;
  std::string spectral_output;
  CLI::App* spectral = app.add_subcommand("spectral-check", "momentum-space identity report");
  spectral->add_option("--n", spectral_n, "coin qubits")
      ->check(CLI::Range(1, 8))
      ->capture_default_str();
  spectral->add_option("--steps", spectral_steps, "round-trip depth")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  spectral->add_option("--points", spectral_points, "momentum samples")
      ->check(CLI::Range(16, 1 << 20))
      ->capture_default_str();
  spectral->add_option("--output", spectral_output, "report file; stdout when omitted");

  int stationary_n = 1, stationary_steps = 50;
  OutputFlags stationary_flags;
  CLI::App* stationary = app.add_subcommand("stationary", "asymptotic peak and root tables");
  stationary->add_option("--n", stationary_n, "coin qubits")
      ->check(CLI::Range(1, 8))
      ->capture_default_str();
  stationary->add_option("--steps", stationary_steps, "number of steps")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  stationary->add_option("--output", stationary_flags.prefix,
                         "output file prefix; stdout when omitted");

  int validate_depth = 4, validate_qubits = 7;
  bool validate_fault = false;
  std::string validate_format = "text", validate_output;
  CLI::App* validate = app.add_subcommand("validate", "run the invariant suites");
  validate->add_option("--oracle-depth", validate_depth, "history-enumeration depth")
      ->check(CLI::Range(1, 6))
      ->capture_default_str();
  validate->add_option("--max-qubits", validate_qubits, "largest register checked")
      ->check(CLI::Range(1, max_qubits))
      ->capture_default_str();
  validate->add_flag("--inject-fault", validate_fault,
                     "negative control: corrupt one coin entry and expect failures");
  validate->add_option("--format", validate_format, "report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  validate->add_option("--output", validate_output, "report file; stdout when omitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(run)) {
      return cmd_run(run_n, run_steps, run_threshold, run_initial, run_flags,
                     output_options(run_flags, command_line));
    }
    if (app.got_subcommand(sweep)) {
      return cmd_sweep(sweep_range, sweep_steps, sweep_threshold, sweep_flags,
                       output_options(sweep_flags, command_line));
    }
    if (app.got_subcommand(classical)) {
      return cmd_classical(classical_steps, classical_p, classical_threshold, classical_flags,
                           output_options(classical_flags, command_line));
    }
    if (app.got_subcommand(spectral)) {
      return cmd_spectral_check(spectral_n, spectral_steps, spectral_points, spectral_output);
    }
    if (app.got_subcommand(stationary)) {
      return cmd_stationary(stationary_n, stationary_steps, stationary_flags,
                            output_options(stationary_flags, command_line));
    }
    if (app.got_subcommand(validate)) {
      return cmd_validate(validate_depth, validate_qubits, validate_fault, validate_format,
                          validate_output);
    }
  } catch (const std::invalid_argument& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 2;
  } catch (const std::domain_error& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 2;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 3;
  }
  return 0;
}
