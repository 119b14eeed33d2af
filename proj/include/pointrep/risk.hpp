#pragma once

#include <iosfwd>
#include <vector>

#include "pointrep/estimator.hpp"
#include "pointrep/simulate.hpp"

namespace pointrep {

struct SurfaceCell {
  double gamma = 0.0;
  double delta = 0.0;
  double mean_risk = 0.0;
  double std_error = 0.0;
};

struct RiskSurface {
  std::vector<double> gamma_grid;
  std::vector<double> delta_grid;
  std::size_t reps = 0;
  std::vector<SurfaceCell> cells;  // gamma-major, delta-minor
};

/// Exact squared L2 distance between the reconstruction and the truth.
double l2_risk(const StepFunction& h_tilde, const StepFunction& h);

/// Monte Carlo mean risk over a (gamma, delta) grid. Stats are computed once
/// per replication and shared by every cell; only thresholds change across
/// the grid. Replication r draws from stream (sim.seed, r), so the surface
/// is identical for any thread count. A replication with no parents scores
/// ||h||^2 (nothing estimable).
RiskSurface risk_surface(const SimConfig& sim, const EstimatorConfig& est,
                         const std::vector<double>& gamma_grid,
                         const std::vector<double>& delta_grid, std::size_t reps,
                         unsigned threads = 1);

/// Monte Carlo estimate of sum_lambda min(var(beta_hat), beta^2) plus the
/// off-grid tail energy; a diagnostic that needs the true signal.
double oracle_risk(const SimConfig& sim, const IndexGrid& grid, std::size_t reps,
                   unsigned threads = 1);

struct McReport {
  HaarIndex index;
  double mean_beta_hat = 0.0;
  double mc_stderr = 0.0;
  double true_beta = 0.0;
  double emp_var = 0.0;
};

/// Replicated coefficient estimates for selected indices (direct s_lambda
/// path), with exact true coefficients for comparison.
std::vector<McReport> mc_validate(const SimConfig& sim, const std::vector<HaarIndex>& lambdas,
                                  std::size_t reps, unsigned threads = 1);

/// CSV with header `gamma,delta,mean_risk,stderr,reps`.
void write_surface_csv(std::ostream& out, const RiskSurface& surface);

}  // namespace pointrep
