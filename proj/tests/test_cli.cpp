#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pointrep/cli.hpp"
#include "pointrep/estimator.hpp"
#include "pointrep/risk.hpp"
#include "pointrep/simulate.hpp"

namespace fs = std::filesystem;
using namespace pointrep;

namespace {

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "pointrep_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("simulate then estimate round-trips the in-process pipeline") {
  const fs::path dir = temp_dir();
  const fs::path sample_path = dir / "sample.csv";
  const fs::path est_dir = dir / "est";

  REQUIRE(cli::run({"simulate", "--T", "500", "--mu", "0.1", "--signal", "signal1", "--seed",
                    "42", "-o", sample_path.string()}) == 0);
  REQUIRE(fs::exists(sample_path));
  REQUIRE(fs::exists(sample_path.string() + ".meta.json"));

  REQUIRE(cli::run({"estimate", "--sample", sample_path.string(), "-o", est_dir.string()}) == 0);

  // in-process reference
  SimConfig sim;
  sim.horizon = 500.0;
  sim.parent_mode = ParentMode::poisson;
  sim.parent_intensity = 0.1;
  sim.signal = builtin_signal("signal1", 4.0);
  sim.seed = 42;
  const EstimateResult reference = estimate(simulate(sim), EstimatorConfig{});

  std::ostringstream coeffs, hhat;
  write_coefficients_csv(coeffs, reference.table);
  write_step_csv(hhat, reference.h_tilde);
  CHECK(slurp(est_dir / "coefficients.csv") == coeffs.str());
  CHECK(slurp(est_dir / "hhat.csv") == hhat.str());

  // sample CSV itself round-trips bit-exactly
  std::ostringstream sample_csv;
  write_sample_csv(sample_csv, simulate(sim));
  CHECK(slurp(sample_path) == sample_csv.str());
}

TEST_CASE("estimate of an empty-children sample writes a zero reconstruction") {
  const fs::path dir = temp_dir();
  const fs::path sample_path = dir / "empty.csv";
  {
    std::ofstream out(sample_path);
    out << "role,position\nparent,1\nparent,2\n";
  }
  REQUIRE(cli::run({"estimate", "--sample", sample_path.string(), "--T", "10", "-o",
                    (dir / "empty_est").string()}) == 0);
  CHECK(slurp(dir / "empty_est" / "hhat.csv") == "left,right,value\n");
}

TEST_CASE("estimate accepts parent/child position files") {
  const fs::path dir = temp_dir();
  const fs::path parents = dir / "parents.txt";
  const fs::path children = dir / "children.txt";
  {
    std::ofstream p(parents);
    p << "# parents\n1.0\n5.0\n9.0\n";
    std::ofstream c(children);
    c << "1.2\n1.4\n5.3\n9.1\n";
  }
  REQUIRE(cli::run({"estimate", "--parents", parents.string(), "--children", children.string(),
                    "--T", "20", "--j0", "2", "--A", "2", "-o",
                    (dir / "genomic").string()}) == 0);
  CHECK(fs::exists(dir / "genomic" / "coefficients.csv"));

  // both input styles at once is an error
  CHECK(cli::run({"estimate", "--sample", (dir / "s.csv").string(), "--parents",
                  parents.string(), "--children", children.string(), "--T", "20", "-o",
                  (dir / "z").string()}) == 1);
  // position files without --T is an error
  CHECK(cli::run({"estimate", "--parents", parents.string(), "--children", children.string(),
                  "-o", (dir / "z").string()}) == 1);
}

TEST_CASE("exit codes") {
  const fs::path dir = temp_dir();
  CHECK(cli::run({"simulate", "--bogus-flag"}) == 2);
  CHECK(cli::run({}) == 2);
  CHECK(cli::run({"estimate", "--sample", (dir / "missing.csv").string(), "--T", "10", "-o",
                  (dir / "x").string()}) == 1);
  // --T missing and no sidecar metadata
  const fs::path bare = dir / "bare.csv";
  {
    std::ofstream out(bare);
    out << "role,position\nparent,1\n";
  }
  CHECK(cli::run({"estimate", "--sample", bare.string(), "-o", (dir / "y").string()}) == 1);
}

TEST_CASE("plotdata rows") {
  const StepFunction estimate_fn = make_step({0.0, 1.0}, {4.0});
  const StepFunction truth = builtin_signal("signal1", 4.0);
  std::ostringstream out;
  cli::emit_reconstruction_plotdata(out, estimate_fn, &truth);
  CHECK(out.str() == "x,estimate,truth\n0,4,4\n1,4,4\n");

  std::ostringstream no_truth;
  cli::emit_reconstruction_plotdata(no_truth, estimate_fn, nullptr);
  CHECK(no_truth.str() == "x,estimate\n0,4\n1,4\n");

  std::ostringstream empty;
  cli::emit_reconstruction_plotdata(empty, StepFunction{}, nullptr);
  CHECK(empty.str() == "x,estimate\n0,0\n0,0\n");

  std::ostringstream mixed;
  const StepFunction off = make_step({0.0, 0.5}, {2.0});
  cli::emit_reconstruction_plotdata(mixed, off, &truth);
  CHECK(mixed.str() == "x,estimate,truth\n0,2,4\n0.5,2,4\n0.5,0,4\n1,0,4\n");
}

TEST_CASE("calibrate output is byte-identical across thread counts") {
  const fs::path dir = temp_dir();
  const fs::path surf1 = dir / "surface_t1.csv";
  const fs::path surf2 = dir / "surface_t2.csv";
  const std::vector<std::string> base = {
      "calibrate", "--T", "300",         "--mu",        "0.1",  "--signal", "signal1",
      "--seed",    "7",   "--gamma-min", "0.1",         "--gamma-max", "0.3",
      "--gamma-step", "0.2", "--delta-min", "1.0", "--delta-max", "1.0",
      "--delta-step", "1.0", "--reps", "3"};
  std::vector<std::string> run1 = base;
  run1.insert(run1.end(), {"--threads", "1", "-o", surf1.string()});
  std::vector<std::string> run2 = base;
  run2.insert(run2.end(), {"--threads", "2", "-o", surf2.string()});
  REQUIRE(cli::run(run1) == 0);
  REQUIRE(cli::run(run2) == 0);
  CHECK(slurp(surf1) == slurp(surf2));
  CHECK(slurp(surf1).rfind("gamma,delta,mean_risk,stderr,reps\n", 0) == 0);
}

TEST_CASE("validate writes a report") {
  const fs::path dir = temp_dir();
  const fs::path report = dir / "report.csv";
  REQUIRE(cli::run({"validate", "--T", "200", "--mu", "0.1", "--signal", "signal1", "--reps",
                    "50", "--lambda", "-1,0", "--seed", "3", "-o", report.string()}) == 0);
  const std::string text = slurp(report);
  CHECK(text.rfind("j,k,mean_beta_hat,mc_stderr,true_beta,emp_var,reps\n", 0) == 0);
  CHECK(text.find("-1,0,") != std::string::npos);
}

TEST_CASE("scan-motif output feeds read_positions") {
  const fs::path dir = temp_dir();
  const fs::path fasta = dir / "toy.fa";
  {
    std::ofstream out(fasta);
    out << ">toy\ngcatg\n";
  }
  const fs::path hits = dir / "hits.txt";
  REQUIRE(cli::run({"scan-motif", "--fasta", fasta.string(), "--motif", "cat", "--spacer",
                    "10000", "-o", hits.string()}) == 0);
  const std::string text = slurp(hits);
  CHECK(text.find("# source=") == 0);
  CHECK(text.find("\n2\n") != std::string::npos);
  CHECK(text.find("\n10006\n") != std::string::npos);
}

}  // TEST_SUITE
