#include "pointrep/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "pointrep/estimator.hpp"
#include "pointrep/haar.hpp"
#include "pointrep/ingest.hpp"
#include "pointrep/risk.hpp"
#include "pointrep/simulate.hpp"

namespace fs = std::filesystem;

namespace pointrep::cli {

namespace {

void write_file_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

StepFunction load_signal(const std::string& name, const std::string& file, double nu) {
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open signal file " + file);
    return read_step_csv(in);
  }
  if (name == "zero") return {};
  return builtin_signal(name, nu);
}

std::vector<double> make_range(double lo, double hi, double step) {
  if (!(step > 0)) throw std::runtime_error("grid step must be positive");
  if (hi < lo) throw std::runtime_error("grid upper bound below lower bound");
  std::vector<double> grid;
  for (int i = 0;; ++i) {
    const double v = lo + i * step;
    if (v > hi + 1e-9 * step) break;
    grid.push_back(v);
  }
  return grid;
}

// Shared simulation flags (simulate, calibrate, validate).
struct SimFlags {
  double horizon = 0.0;
  double mu = 0.0;
  std::int64_t n = -1;
  std::string signal = "signal1";
  std::string signal_file;
  double nu = 4.0;
  double orphan_intensity = 0.0;
  std::uint64_t seed = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--T", horizon, "observation horizon")->required();
    cmd->add_option("--mu", mu, "parent intensity (Poisson parent count)");
    cmd->add_option("--n", n, "fixed parent count")->check(CLI::NonNegativeNumber);
    cmd->add_option("--signal", signal, "signal1|signal2|signal3|zero")
        ->check(CLI::IsMember({"signal1", "signal2", "signal3", "zero"}));
    cmd->add_option("--signal-file", signal_file, "custom reproduction function (step CSV)");
    cmd->add_option("--nu", nu, "builtin signal amplitude")->check(CLI::NonNegativeNumber);
    cmd->add_option("--orphan-intensity", orphan_intensity, "homogeneous noise on [0,T+1]")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", seed, "master seed");
  }

  SimConfig to_config() const {
    SimConfig config;
    config.horizon = horizon;
    if (n >= 0 && mu > 0) throw std::runtime_error("--n and --mu are mutually exclusive");
    if (n >= 0) {
      config.parent_mode = ParentMode::fixed;
      config.parent_count = static_cast<std::size_t>(n);
    } else if (mu > 0) {
      config.parent_mode = ParentMode::poisson;
      config.parent_intensity = mu;
    } else {
      throw std::runtime_error("one of --mu or --n is required");
    }
    config.signal = load_signal(signal, signal_file, nu);
    config.signal_label = signal_file.empty() ? signal : signal_file;
    config.orphan_intensity = orphan_intensity;
    config.seed = seed;
    return config;
  }
};

// Shared estimator flags.
struct EstFlags {
  int j0 = 5;
  int half_width = 10;
  bool mothers_through_j0 = false;
  double gamma = 0.18;
  double delta = 2.4;
  std::string threshold_mode = "practical";
  double d_const = 1.0;
  std::string variance_mode;

  void attach(CLI::App* cmd, bool with_gamma_delta) {
    cmd->add_option("--j0", j0, "maximum resolution level")->check(CLI::PositiveNumber);
    cmd->add_option("--A", half_width, "support half-width")->check(CLI::PositiveNumber);
    cmd->add_flag("--mothers-through-j0", mothers_through_j0,
                  "extend mother levels through j0 instead of j0-1");
    if (with_gamma_delta) {
      cmd->add_option("--gamma", gamma, "threshold weight")->check(CLI::NonNegativeNumber);
      cmd->add_option("--delta", delta, "practical-mode constant")
          ->check(CLI::NonNegativeNumber);
      cmd->add_option("--threshold-mode", threshold_mode, "practical|theoretical")
          ->check(CLI::IsMember({"practical", "theoretical"}));
      cmd->add_option("--d-const", d_const, "theoretical-mode constant")
          ->check(CLI::NonNegativeNumber);
      cmd->add_option("--variance-mode", variance_mode, "vhat|vtilde")
          ->check(CLI::IsMember({"vhat", "vtilde"}));
    }
  }

  EstimatorConfig to_config() const {
    EstimatorConfig config;
    config.j0 = j0;
    config.support_half_width = half_width;
    if (mothers_through_j0) config.mother_levels_through = j0;
    config.gamma = gamma;
    config.delta = delta;
    config.threshold_mode =
        threshold_mode == "theoretical" ? ThresholdMode::theoretical : ThresholdMode::practical;
    config.d_const = d_const;
    if (variance_mode == "vhat") config.variance_mode = VarianceMode::v_hat;
    if (variance_mode == "vtilde") config.variance_mode = VarianceMode::v_tilde;
    return config;
  }
};

unsigned resolve_threads(unsigned flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("POINTREP_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

int run_simulate(const SimFlags& sim, const std::string& output) {
  const SimConfig config = sim.to_config();
  const ProcessSample sample = simulate(config);
  std::ostringstream csv;
  write_sample_csv(csv, sample);
  write_file_atomic(output, csv.str());
  write_file_atomic(output + ".meta.json", sample_metadata_json(config, sample));
  std::cout << "wrote " << output << " (" << sample.parent_count() << " parents, "
            << sample.child_count() << " children)\n";
  return 0;
}

OccurrenceSet load_positions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open positions file " + path);
  return read_positions(in, path);
}

int run_estimate(const EstFlags& est, const std::string& sample_path,
                 const std::string& parents_path, const std::string& children_path,
                 double horizon, const std::string& truth_name, const std::string& truth_file,
                 double nu, unsigned threads, const std::string& outdir) {
  ProcessSample sample;
  if (!parents_path.empty() || !children_path.empty()) {
    if (parents_path.empty() || children_path.empty())
      throw std::runtime_error("--parents and --children must be given together");
    if (!sample_path.empty())
      throw std::runtime_error("--sample and --parents/--children are mutually exclusive");
    if (!(horizon > 0)) throw std::runtime_error("--T is required with position files");
    sample = to_sample(load_positions(parents_path), load_positions(children_path), horizon);
  } else {
    if (sample_path.empty()) throw std::runtime_error("--sample or --parents/--children required");
    double T = horizon;
    if (!(T > 0)) {
      const fs::path meta = sample_path + ".meta.json";
      if (!fs::exists(meta))
        throw std::runtime_error("horizon unknown: pass --T or provide " + meta.string());
      T = horizon_from_metadata_json(read_file(meta));
    }
    std::ifstream in(sample_path);
    if (!in) throw std::runtime_error("cannot open sample " + sample_path);
    sample = read_sample_csv(in, T);
  }

  const EstimateResult result = estimate(sample, est.to_config(), threads);

  std::ostringstream coeffs;
  write_coefficients_csv(coeffs, result.table);
  std::ostringstream hhat;
  write_step_csv(hhat, result.h_tilde);
  const fs::path dir = outdir;
  fs::create_directories(dir);
  write_file_atomic(dir / "coefficients.csv", coeffs.str());
  write_file_atomic(dir / "hhat.csv", hhat.str());

  std::optional<StepFunction> truth;
  if (!truth_name.empty() || !truth_file.empty())
    truth = load_signal(truth_name, truth_file, nu);
  std::ostringstream plot;
  emit_reconstruction_plotdata(plot, result.h_tilde, truth ? &*truth : nullptr);
  write_file_atomic(dir / "plotdata.csv", plot.str());

  std::size_t kept = 0;
  for (const auto& row : result.table.rows) kept += row.kept ? 1 : 0;
  std::cout << "wrote " << (dir / "coefficients.csv").string() << " and "
            << (dir / "hhat.csv").string() << " (" << kept << "/" << result.table.rows.size()
            << " coefficients kept)\n";
  return 0;
}

int run_calibrate(const SimFlags& sim, const EstFlags& est, double gamma_min, double gamma_max,
                  double gamma_step, double delta_min, double delta_max, double delta_step,
                  std::size_t reps, unsigned threads, const std::string& output) {
  const RiskSurface surface =
      risk_surface(sim.to_config(), est.to_config(), make_range(gamma_min, gamma_max, gamma_step),
                   make_range(delta_min, delta_max, delta_step), reps, threads);
  std::ostringstream csv;
  write_surface_csv(csv, surface);
  write_file_atomic(output, csv.str());
  std::cout << "wrote " << output << " (" << surface.cells.size() << " cells x " << reps
            << " reps)\n";
  return 0;
}

int run_validate(const SimFlags& sim, const std::vector<std::string>& lambda_specs,
                 std::size_t reps, unsigned threads, const std::string& output) {
  std::vector<HaarIndex> lambdas;
  for (const std::string& spec : lambda_specs) {
    HaarIndex idx;
    char comma;
    std::istringstream parse(spec);
    if (!(parse >> idx.j >> comma >> idx.k) || comma != ',')
      throw std::runtime_error("bad --lambda '" + spec + "', expected j,k");
    lambdas.push_back(idx);
  }
  if (lambdas.empty()) lambdas = {{-1, 0}, {0, 0}, {2, 3}};

  const std::vector<McReport> report = mc_validate(sim.to_config(), lambdas, reps, threads);
  std::ostringstream csv;
  csv << "j,k,mean_beta_hat,mc_stderr,true_beta,emp_var,reps\n";
  for (const McReport& r : report)
    csv << r.index.j << ',' << r.index.k << ',' << fmt_full(r.mean_beta_hat) << ','
        << fmt_full(r.mc_stderr) << ',' << fmt_full(r.true_beta) << ',' << fmt_full(r.emp_var)
        << ',' << reps << '\n';
  write_file_atomic(output, csv.str());
  std::cout << "wrote " << output << '\n';
  for (const McReport& r : report)
    std::cout << "  lambda=(" << r.index.j << ',' << r.index.k << ") mean=" << r.mean_beta_hat
              << " true=" << r.true_beta << " stderr=" << r.mc_stderr << '\n';
  return 0;
}

int run_scan_motif(const std::string& fasta_path, const std::string& motif, long spacer,
                   double rescale_factor, const std::string& output) {
  std::ifstream in(fasta_path);
  if (!in) throw std::runtime_error("cannot open fasta " + fasta_path);
  const std::string sequence = read_fasta(in);
  OccurrenceSet occ = scan_fasta(sequence, motif, spacer);
  occ.source = fasta_path;
  if (rescale_factor != 1.0) occ = rescale(occ, rescale_factor);

  std::ostringstream text;
  text << "# source=" << fasta_path << " motif=" << motif << " spacer=" << spacer
       << " rescale=" << fmt_full(rescale_factor) << " count=" << occ.positions.size()
       << " unit=" << (occ.unit == PositionUnit::bases ? "bases" : "kilobases") << '\n';
  for (double p : occ.positions) text << fmt_full(p) << '\n';
  write_file_atomic(output, text.str());
  std::cout << "wrote " << output << " (" << occ.positions.size() << " occurrences)\n";
  return 0;
}

}  // namespace

void emit_reconstruction_plotdata(std::ostream& out, const StepFunction& h_tilde,
                                  const StepFunction* truth) {
  out << (truth ? "x,estimate,truth\n" : "x,estimate\n");
  std::vector<double> grid;
  grid.insert(grid.end(), h_tilde.breakpoints.begin(), h_tilde.breakpoints.end());
  if (truth) grid.insert(grid.end(), truth->breakpoints.begin(), truth->breakpoints.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  auto emit_row = [&](double x, double ve, double vt) {
    out << fmt_full(x) << ',' << fmt_full(ve);
    if (truth) out << ',' << fmt_full(vt);
    out << '\n';
  };
  if (grid.size() < 2) {
    emit_row(0.0, 0.0, 0.0);
    emit_row(0.0, 0.0, 0.0);
    return;
  }
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double ve = eval(h_tilde, grid[i]);
    const double vt = truth ? eval(*truth, grid[i]) : 0.0;
    emit_row(grid[i], ve, vt);
    emit_row(grid[i + 1], ve, vt);
  }
}

int run(int argc, const char* const* argv) {
  CLI::App app{"reproduction-function estimation for parent/child point processes"};
  app.require_subcommand(1);

  SimFlags sim_flags;
  EstFlags est_flags;
  unsigned threads = 0;
  std::string output;

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "draw a parent/child sample");
  sim_flags.attach(sim_cmd);
  sim_cmd->add_option("-o,--output", output, "sample CSV path")->required();

  // estimate
  std::string sample_path, parents_path, children_path, truth_name, truth_file;
  double horizon_override = 0.0, truth_nu = 4.0;
  auto* est_cmd = app.add_subcommand("estimate", "estimate the reproduction function");
  est_cmd->add_option("--sample", sample_path, "sample CSV");
  est_cmd->add_option("--parents", parents_path, "parent positions file (with --children)");
  est_cmd->add_option("--children", children_path, "child positions file (with --parents)");
  est_cmd->add_option("--T", horizon_override, "horizon override (else sidecar metadata)");
  est_flags.attach(est_cmd, true);
  est_cmd->add_option("--truth", truth_name, "builtin signal for plot data")
      ->check(CLI::IsMember({"signal1", "signal2", "signal3", "zero"}));
  est_cmd->add_option("--truth-file", truth_file, "custom truth (step CSV)");
  est_cmd->add_option("--nu", truth_nu, "builtin truth amplitude");
  est_cmd->add_option("--threads", threads, "worker threads (env POINTREP_THREADS)");
  est_cmd->add_option("-o,--output", output, "output directory")->required();

  // calibrate
  double gamma_min = 0.02, gamma_max = 1.0, gamma_step = 0.02;
  double delta_min = 0.0, delta_max = 4.0, delta_step = 0.2;
  std::size_t reps = 20;
  auto* cal_cmd = app.add_subcommand("calibrate", "Monte Carlo risk surface over (gamma, delta)");
  // reuses the simulate flags plus grid controls
  SimFlags cal_sim;
  EstFlags cal_est;
  cal_sim.attach(cal_cmd);
  cal_est.attach(cal_cmd, false);
  cal_cmd->add_option("--gamma-min", gamma_min);
  cal_cmd->add_option("--gamma-max", gamma_max);
  cal_cmd->add_option("--gamma-step", gamma_step)->check(CLI::PositiveNumber);
  cal_cmd->add_option("--delta-min", delta_min);
  cal_cmd->add_option("--delta-max", delta_max);
  cal_cmd->add_option("--delta-step", delta_step)->check(CLI::PositiveNumber);
  cal_cmd->add_option("--reps", reps, "replications per cell")->check(CLI::PositiveNumber);
  cal_cmd->add_option("--threads", threads, "worker threads (env POINTREP_THREADS)");
  cal_cmd->add_option("-o,--output", output, "surface CSV path")->required();

  // validate
  SimFlags val_sim;
  std::vector<std::string> lambda_specs;
  std::size_t val_reps = 500;
  auto* val_cmd = app.add_subcommand("validate", "Monte Carlo check of coefficient estimates");
  val_sim.attach(val_cmd);
  val_cmd->add_option("--lambda", lambda_specs, "index j,k (repeatable)");
  val_cmd->add_option("--reps", val_reps, "replications")->check(CLI::PositiveNumber);
  val_cmd->add_option("--threads", threads, "worker threads (env POINTREP_THREADS)");
  val_cmd->add_option("-o,--output", output, "report CSV path")->required();

  // scan-motif
  std::string fasta_path, motif;
  long spacer = 10000;
  double rescale_factor = 1.0;
  auto* scan_cmd = app.add_subcommand("scan-motif", "exact motif occurrences on both strands");
  scan_cmd->add_option("--fasta", fasta_path, "FASTA file")->required();
  scan_cmd->add_option("--motif", motif, "motif over {a,c,g,t}")->required();
  scan_cmd->add_option("--spacer", spacer, "artificial bases between strands")
      ->check(CLI::NonNegativeNumber);
  scan_cmd->add_option("--rescale", rescale_factor, "divide positions by this factor")
      ->check(CLI::PositiveNumber);
  scan_cmd->add_option("-o,--output", output, "positions file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n' << app.help();
    return 2;
  }

  try {
    if (app.got_subcommand(sim_cmd)) return run_simulate(sim_flags, output);
    if (app.got_subcommand(est_cmd))
      return run_estimate(est_flags, sample_path, parents_path, children_path, horizon_override,
                          truth_name, truth_file, truth_nu, resolve_threads(threads), output);
    if (app.got_subcommand(cal_cmd))
      return run_calibrate(cal_sim, cal_est, gamma_min, gamma_max, gamma_step, delta_min,
                           delta_max, delta_step, reps, resolve_threads(threads), output);
    if (app.got_subcommand(val_cmd))
      return run_validate(val_sim, lambda_specs, val_reps, resolve_threads(threads), output);
    if (app.got_subcommand(scan_cmd))
      return run_scan_motif(fasta_path, motif, spacer, rescale_factor, output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("pointrep");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace pointrep::cli
