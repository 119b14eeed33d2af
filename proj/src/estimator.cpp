#include "pointrep/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "pointrep/parallel.hpp"

namespace pointrep {

namespace {

// sum_i w(. - U_i) by sweeping the piece-edge events of each translate.
StepFunction sum_of_translates(const StepFunction& w, const std::vector<double>& parents) {
  if (w.is_zero() || parents.empty()) return {};
  std::vector<std::pair<double, double>> events;  // (position, value delta)
  events.reserve(parents.size() * w.breakpoints.size());
  for (double u : parents) {
    for (std::size_t p = 0; p < w.values.size(); ++p) {
      events.emplace_back(u + w.breakpoints[p], w.values[p]);
      events.emplace_back(u + w.breakpoints[p + 1], -w.values[p]);
    }
  }
  std::sort(events.begin(), events.end());
  std::vector<double> bp, vals;
  double level = 0.0;
  for (std::size_t i = 0; i < events.size();) {
    const double x = events[i].first;
    while (i < events.size() && events[i].first == x) level += events[i++].second;
    bp.push_back(x);
    if (i < events.size()) vals.push_back(level);
  }
  return make_step(std::move(bp), std::move(vals));
}

PiecewiseLinear centered_field(const StepFunction& random_part, HaarIndex idx,
                               std::size_t n, double T) {
  const PiecewiseLinear rp = to_piecewise_linear(random_part);
  if (n <= 1) return rp;
  return combine(1.0, rp, -static_cast<double>(n - 1), mean_shift(idx, T));
}

void fill_row(CoefficientRow& row, const PiecewiseLinear& s,
              const std::vector<double>& children, std::size_t n, double gamma, int j0) {
  double sum = 0.0, sum_sq = 0.0;
  for (double x : children) {
    const double v = eval(s, x);
    sum += v;
    sum_sq += v * v;
  }
  const double nn = static_cast<double>(n);
  const double b = sup_abs(s);       // B(phi_lambda)
  const double v_hat_raw = sum_sq;   // V_hat(phi_lambda)
  const double gj = gamma * j0;
  row.beta_hat = sum / nn;
  row.b_stat = b / nn;
  row.v_hat = v_hat_raw / (nn * nn);
  row.v_tilde =
      (v_hat_raw + std::sqrt(2.0 * gj * v_hat_raw * b * b) + 3.0 * gj * b * b) / (nn * nn);
}

}  // namespace

PiecewiseLinear s_lambda(const ProcessSample& sample, HaarIndex idx) {
  const std::size_t n = sample.parent_count();
  if (n == 0) return {};
  const StepFunction random_part = sum_of_translates(wavelet_fn(idx), sample.parents);
  return centered_field(random_part, idx, n, sample.horizon);
}

CoefficientTable coefficient_stats(const ProcessSample& sample, const IndexGrid& grid,
                                   double gamma, unsigned threads) {
  if (sample.parent_count() == 0)
    throw std::invalid_argument("coefficient_stats: at least one parent required");
  if (!(sample.horizon > 0)) throw std::invalid_argument("coefficient_stats: T must be positive");
  if (gamma < 0) throw std::invalid_argument("coefficient_stats: gamma must be nonnegative");

  CoefficientTable table;
  table.grid = grid;
  table.rows.resize(grid.size());
  table.parent_count = sample.parent_count();
  table.child_count = sample.child_count();
  table.horizon = sample.horizon;
  table.gamma = gamma;

  const std::vector<StepFunction> random_parts = cascade(sample.parents, grid);
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    const HaarIndex idx = grid.indices[i];
    const PiecewiseLinear s =
        centered_field(random_parts[i], idx, table.parent_count, sample.horizon);
    table.rows[i].index = idx;
    fill_row(table.rows[i], s, sample.children, table.parent_count, gamma, grid.j0);
  });
  return table;
}

std::vector<double> thresholds(const CoefficientTable& table, const EstimatorConfig& config) {
  if (config.gamma < 0) throw std::invalid_argument("thresholds: gamma must be nonnegative");
  if (config.threshold_mode == ThresholdMode::practical && config.delta < 0)
    throw std::invalid_argument("thresholds: delta must be nonnegative");
  if (config.threshold_mode == ThresholdMode::theoretical && config.d_const < 0)
    throw std::invalid_argument("thresholds: d_const must be nonnegative");

  const int j0 = table.grid.j0;
  const double gj = config.gamma * j0;
  const double n = static_cast<double>(table.parent_count);
  const double T = table.horizon;
  const double ratio = static_cast<double>(table.child_count) / n;

  double tail_term;
  if (config.threshold_mode == ThresholdMode::practical) {
    tail_term = config.delta / std::sqrt(T) * ratio;
  } else {
    const double shape = static_cast<double>(j0) * j0 * pow2_half(j0) / n +
                         j0 / std::sqrt(T) + std::sqrt(static_cast<double>(j0) * n) / T;
    tail_term = config.d_const * shape * ratio;
  }

  const bool use_tilde = config.effective_variance_mode() == VarianceMode::v_tilde;
  std::vector<double> eta(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const CoefficientRow& row = table.rows[i];
    double v = row.v_hat;
    if (use_tilde) {
      const double b2 = row.b_stat * row.b_stat;
      v = row.v_hat + std::sqrt(2.0 * gj * row.v_hat * b2) + 3.0 * gj * b2;
    }
    eta[i] = std::sqrt(2.0 * gj * v) + gj / 3.0 * row.b_stat + tail_term;
  }
  return eta;
}

void apply_threshold(CoefficientTable& table, const std::vector<double>& eta) {
  if (eta.size() != table.rows.size())
    throw std::invalid_argument("apply_threshold: eta size mismatch");
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    CoefficientRow& row = table.rows[i];
    row.eta = eta[i];
    row.kept = std::abs(row.beta_hat) >= eta[i];
    row.beta_tilde = row.kept ? row.beta_hat : 0.0;
  }
}

StepFunction reconstruct_from(const IndexGrid& grid, const std::vector<double>& beta_tilde) {
  if (beta_tilde.size() != grid.size())
    throw std::invalid_argument("reconstruct_from: coefficient count mismatch");
  const DyadicLattice lat = grid_lattice(grid);
  const int L = grid.mother_levels_through;
  std::vector<double> acc(lat.cell_count, 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double beta = beta_tilde[i];
    if (beta == 0.0) continue;
    const HaarIndex idx = grid.indices[i];
    const long A = grid.support_half_width;
    if (idx.j == -1) {
      const std::size_t start = static_cast<std::size_t>(idx.k + A) << (L + 1);
      const std::size_t width = std::size_t{1} << (L + 1);
      for (std::size_t c = start; c < start + width; ++c) acc[c] += beta;
    } else {
      const std::size_t start = static_cast<std::size_t>(idx.k + (A << idx.j)) << (L + 1 - idx.j);
      const std::size_t half = std::size_t{1} << (L - idx.j);
      const double amp = beta * pow2_half(idx.j);
      for (std::size_t c = start; c < start + half; ++c) acc[c] -= amp;
      for (std::size_t c = start + half; c < start + 2 * half; ++c) acc[c] += amp;
    }
  }
  std::vector<double> bp(lat.cell_count + 1);
  for (std::size_t i = 0; i <= lat.cell_count; ++i) bp[i] = lat.x(i);
  return make_step(std::move(bp), std::move(acc));
}

StepFunction reconstruct(const CoefficientTable& table) {
  std::vector<double> beta(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) beta[i] = table.rows[i].beta_tilde;
  return reconstruct_from(table.grid, beta);
}

EstimateResult estimate(const ProcessSample& sample, const EstimatorConfig& config,
                        unsigned threads) {
  EstimateResult result;
  result.table = coefficient_stats(sample, config.make_grid(), config.gamma, threads);
  apply_threshold(result.table, thresholds(result.table, config));
  result.h_tilde = reconstruct(result.table);
  return result;
}

void write_coefficients_csv(std::ostream& out, const CoefficientTable& table) {
  out << "j,k,beta_hat,b_stat,v_hat,v_tilde,eta,kept,beta_tilde\n";
  for (const CoefficientRow& row : table.rows) {
    out << row.index.j << ',' << row.index.k << ',' << fmt_full(row.beta_hat) << ','
        << fmt_full(row.b_stat) << ',' << fmt_full(row.v_hat) << ',' << fmt_full(row.v_tilde)
        << ',' << fmt_full(row.eta) << ',' << (row.kept ? 1 : 0) << ','
        << fmt_full(row.beta_tilde) << '\n';
  }
}

}  // namespace pointrep
