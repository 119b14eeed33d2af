#include "pointrep/risk.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "pointrep/parallel.hpp"

namespace pointrep {

namespace {

// Neumaier-compensated accumulator; keeps reductions order-stable enough to
// be reproduced exactly when summed in replication order.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

double mean_in_order(const std::vector<double>& xs) {
  KahanSum s;
  for (double x : xs) s.add(x);
  return s.value() / static_cast<double>(xs.size());
}

double sample_variance(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  KahanSum s;
  for (double x : xs) s.add((x - mean) * (x - mean));
  return s.value() / static_cast<double>(xs.size() - 1);
}

}  // namespace

double l2_risk(const StepFunction& h_tilde, const StepFunction& h) {
  return l2_dist_sq(h_tilde, h);
}

RiskSurface risk_surface(const SimConfig& sim, const EstimatorConfig& est,
                         const std::vector<double>& gamma_grid,
                         const std::vector<double>& delta_grid, std::size_t reps,
                         unsigned threads) {
  if (gamma_grid.empty() || delta_grid.empty())
    throw std::invalid_argument("risk_surface: parameter grids must be nonempty");
  if (reps < 1) throw std::invalid_argument("risk_surface: reps must be >= 1");

  const IndexGrid grid = est.make_grid();
  const std::size_t cell_count = gamma_grid.size() * delta_grid.size();
  const double total_energy = l2_norm_sq(sim.signal);

  std::vector<std::vector<double>> risks(reps);
  parallel_for(reps, threads, [&](std::size_t r) {
    std::vector<double>& cell_risks = risks[r];
    cell_risks.assign(cell_count, total_energy);
    const ProcessSample sample = simulate(sim, r);
    if (sample.parent_count() == 0) return;  // nothing estimable this draw

    const CoefficientTable stats = coefficient_stats(sample, grid, est.gamma);
    std::vector<double> beta_tilde(grid.size());
    std::size_t cell = 0;
    EstimatorConfig cfg = est;
    for (double gamma : gamma_grid) {
      cfg.gamma = gamma;
      for (double delta : delta_grid) {
        cfg.delta = delta;
        const std::vector<double> eta = thresholds(stats, cfg);
        for (std::size_t i = 0; i < grid.size(); ++i) {
          const double b = stats.rows[i].beta_hat;
          beta_tilde[i] = std::abs(b) >= eta[i] ? b : 0.0;
        }
        cell_risks[cell++] = l2_dist_sq(reconstruct_from(grid, beta_tilde), sim.signal);
      }
    }
  });

  RiskSurface surface;
  surface.gamma_grid = gamma_grid;
  surface.delta_grid = delta_grid;
  surface.reps = reps;
  surface.cells.resize(cell_count);
  std::vector<double> cell_values(reps);
  std::size_t cell = 0;
  for (double gamma : gamma_grid) {
    for (double delta : delta_grid) {
      for (std::size_t r = 0; r < reps; ++r) cell_values[r] = risks[r][cell];
      SurfaceCell& c = surface.cells[cell];
      c.gamma = gamma;
      c.delta = delta;
      c.mean_risk = mean_in_order(cell_values);
      c.std_error = std::sqrt(sample_variance(cell_values, c.mean_risk) /
                              static_cast<double>(reps));
      ++cell;
    }
  }
  return surface;
}

double oracle_risk(const SimConfig& sim, const IndexGrid& grid, std::size_t reps,
                   unsigned threads) {
  if (reps < 2) throw std::invalid_argument("oracle_risk: need reps >= 2 for a variance");
  const TrueCoefficients truth = true_coeffs(sim.signal, grid);

  std::vector<std::vector<double>> beta_hats(reps);
  parallel_for(reps, threads, [&](std::size_t r) {
    std::vector<double>& row = beta_hats[r];
    row.assign(grid.size(), 0.0);
    const ProcessSample sample = simulate(sim, r);
    const std::size_t n = sample.parent_count();
    if (n == 0) return;
    const std::vector<StepFunction> random_parts = cascade(sample.parents, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const PiecewiseLinear rp = to_piecewise_linear(random_parts[i]);
      const PiecewiseLinear s =
          n <= 1 ? rp
                 : combine(1.0, rp, -static_cast<double>(n - 1),
                           mean_shift(grid.indices[i], sample.horizon));
      double sum = 0.0;
      for (double x : sample.children) sum += eval(s, x);
      row[i] = sum / static_cast<double>(n);
    }
  });

  KahanSum total;
  std::vector<double> column(reps);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t r = 0; r < reps; ++r) column[r] = beta_hats[r][i];
    const double mean = mean_in_order(column);
    const double var = sample_variance(column, mean);
    total.add(std::min(var, truth.beta[i] * truth.beta[i]));
  }
  total.add(truth.tail_energy);
  return total.value();
}

std::vector<McReport> mc_validate(const SimConfig& sim, const std::vector<HaarIndex>& lambdas,
                                  std::size_t reps, unsigned threads) {
  if (reps < 2) throw std::invalid_argument("mc_validate: need reps >= 2");
  std::vector<std::vector<double>> beta_hats(reps);
  parallel_for(reps, threads, [&](std::size_t r) {
    std::vector<double>& row = beta_hats[r];
    row.assign(lambdas.size(), 0.0);
    const ProcessSample sample = simulate(sim, r);
    const std::size_t n = sample.parent_count();
    if (n == 0) return;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      const PiecewiseLinear s = s_lambda(sample, lambdas[i]);
      double sum = 0.0;
      for (double x : sample.children) sum += eval(s, x);
      row[i] = sum / static_cast<double>(n);
    }
  });

  std::vector<McReport> report(lambdas.size());
  std::vector<double> column(reps);
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    for (std::size_t r = 0; r < reps; ++r) column[r] = beta_hats[r][i];
    McReport& rep = report[i];
    rep.index = lambdas[i];
    rep.mean_beta_hat = mean_in_order(column);
    rep.emp_var = sample_variance(column, rep.mean_beta_hat);
    rep.mc_stderr = std::sqrt(rep.emp_var / static_cast<double>(reps));
    rep.true_beta = inner_product(sim.signal, wavelet_fn(lambdas[i]));
  }
  return report;
}

void write_surface_csv(std::ostream& out, const RiskSurface& surface) {
  out << "gamma,delta,mean_risk,stderr,reps\n";
  for (const SurfaceCell& c : surface.cells)
    out << fmt_full(c.gamma) << ',' << fmt_full(c.delta) << ',' << fmt_full(c.mean_risk) << ','
        << fmt_full(c.std_error) << ',' << surface.reps << '\n';
}

}  // namespace pointrep
