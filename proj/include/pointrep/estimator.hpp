#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "pointrep/haar.hpp"
#include "pointrep/stepfn.hpp"

namespace pointrep {

/// Observed parents plus the aggregated child process on horizon [0, T].
/// Children may fall outside [0, T] by up to the reproduction support width;
/// all of them count toward N_R.
struct ProcessSample {
  std::vector<double> parents;   // sorted ascending, within [0, T]
  std::vector<double> children;  // sorted ascending
  double horizon = 0.0;          // T

  std::size_t parent_count() const { return parents.size(); }
  std::size_t child_count() const { return children.size(); }
};

enum class ThresholdMode { practical, theoretical };
enum class VarianceMode { v_hat, v_tilde };

struct EstimatorConfig {
  int j0 = 5;
  int support_half_width = 10;  // A
  std::optional<int> mother_levels_through;  // default j0-1
  double gamma = 0.18;
  ThresholdMode threshold_mode = ThresholdMode::practical;
  double delta = 2.4;    // practical-mode constant
  double d_const = 1.0;  // theoretical-mode constant (user supplied)
  std::optional<VarianceMode> variance_mode;  // default tracks threshold_mode

  int levels_through() const { return mother_levels_through.value_or(j0 - 1); }
  VarianceMode effective_variance_mode() const {
    if (variance_mode) return *variance_mode;
    return threshold_mode == ThresholdMode::practical ? VarianceMode::v_hat
                                                      : VarianceMode::v_tilde;
  }
  IndexGrid make_grid() const { return build_grid(j0, support_half_width, levels_through()); }
};

struct CoefficientRow {
  HaarIndex index;
  double beta_hat = 0.0;
  double b_stat = 0.0;   // sup |S(phi_lambda)| / n
  double v_hat = 0.0;    // V_hat(phi_lambda) / n^2
  double v_tilde = 0.0;  // V_tilde(phi_lambda) / n^2, at the table's gamma
  double eta = 0.0;
  bool kept = false;
  double beta_tilde = 0.0;
};

struct CoefficientTable {
  IndexGrid grid;
  std::vector<CoefficientRow> rows;  // aligned with grid.indices
  std::size_t parent_count = 0;      // n
  std::size_t child_count = 0;       // N_R
  double horizon = 0.0;              // T
  double gamma = 0.0;                // gamma used for the v_tilde column
};

/// S(phi_lambda) = S_r(phi_lambda) - (n-1) * mean_shift(lambda, T), built
/// directly from the wavelet (no cascade); the per-lambda reference path.
PiecewiseLinear s_lambda(const ProcessSample& sample, HaarIndex idx);

/// beta_hat, b_stat, v_hat, v_tilde for every lambda in the grid, computed
/// from one cascade pass. Per-lambda work is independent; `threads` only
/// changes wall time (child sums run left-to-right within each lambda).
/// Requires n >= 1.
CoefficientTable coefficient_stats(const ProcessSample& sample, const IndexGrid& grid,
                                   double gamma, unsigned threads = 1);

/// Per-lambda thresholds. The first term uses v_hat or a v_tilde rebuilt at
/// config.gamma from the stored v_hat/b_stat, so one stats pass serves a
/// whole (gamma, delta) sweep.
std::vector<double> thresholds(const CoefficientTable& table, const EstimatorConfig& config);

/// kept <=> |beta_hat| >= eta (ties kept); beta_tilde = beta_hat * kept.
void apply_threshold(CoefficientTable& table, const std::vector<double>& eta);

/// Sum of beta_tilde * wavelet, painted on the grid's dyadic lattice.
StepFunction reconstruct(const CoefficientTable& table);
StepFunction reconstruct_from(const IndexGrid& grid, const std::vector<double>& beta_tilde);

struct EstimateResult {
  CoefficientTable table;
  StepFunction h_tilde;
};

/// stats -> thresholds -> keep/kill -> reconstruction.
EstimateResult estimate(const ProcessSample& sample, const EstimatorConfig& config,
                        unsigned threads = 1);

/// CSV with header `j,k,beta_hat,b_stat,v_hat,v_tilde,eta,kept,beta_tilde`.
void write_coefficients_csv(std::ostream& out, const CoefficientTable& table);

}  // namespace pointrep
