#include "pointrep/haar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pointrep {

namespace {

constexpr double kSqrtHalf = std::numbers::sqrt2 / 2.0;

// Piece boundary k * 2^-j, exact for the integer ranges a grid produces.
double dyadic(long k, int j) { return std::ldexp(static_cast<double>(k), -j); }

}  // namespace

double pow2_half(int j) {
  if (j % 2 == 0) return std::ldexp(1.0, j / 2);
  // j odd: 2^{j/2} = sqrt(2) * 2^{(j-1)/2}, and j-1 is even so the division
  // below is exact for either sign
  return std::numbers::sqrt2 * std::ldexp(1.0, (j - 1) / 2);
}

std::size_t IndexGrid::position(HaarIndex idx) const {
  const long A = support_half_width;
  if (idx.j == -1) {
    if (idx.k < -A || idx.k >= A) throw std::invalid_argument("IndexGrid: father index off grid");
    return static_cast<std::size_t>(idx.k + A);
  }
  if (idx.j < 0 || idx.j > mother_levels_through)
    throw std::invalid_argument("IndexGrid: level off grid");
  const long half = A << idx.j;
  if (idx.k < -half || idx.k >= half) throw std::invalid_argument("IndexGrid: mother index off grid");
  // fathers (2A) plus all mother blocks below level j
  std::size_t offset = static_cast<std::size_t>(2 * A);
  for (int lvl = 0; lvl < idx.j; ++lvl) offset += static_cast<std::size_t>(2 * A) << lvl;
  return offset + static_cast<std::size_t>(idx.k + half);
}

IndexGrid build_grid(int j0, int A, int mother_levels_through) {
  if (j0 < 1) throw std::invalid_argument("build_grid: j0 must be a positive integer");
  if (A < 1) throw std::invalid_argument("build_grid: A must be a positive integer");
  if (mother_levels_through != j0 - 1 && mother_levels_through != j0)
    throw std::invalid_argument("build_grid: mother levels must run through j0-1 or j0");
  IndexGrid grid;
  grid.j0 = j0;
  grid.support_half_width = A;
  grid.mother_levels_through = mother_levels_through;
  for (long k = -A; k < A; ++k) grid.indices.push_back({-1, k});
  for (int j = 0; j <= mother_levels_through; ++j) {
    const long half = static_cast<long>(A) << j;
    for (long k = -half; k < half; ++k) grid.indices.push_back({j, k});
  }
  return grid;
}

StepFunction wavelet_fn(HaarIndex idx) {
  if (idx.j == -1)
    return make_step({static_cast<double>(idx.k), static_cast<double>(idx.k + 1)}, {1.0});
  if (idx.j < 0) throw std::invalid_argument("wavelet_fn: level must be >= -1");
  const double lo = dyadic(idx.k, idx.j);
  const double mid = dyadic(2 * idx.k + 1, idx.j + 1);
  const double hi = dyadic(idx.k + 1, idx.j);
  const double amp = pow2_half(idx.j);
  return make_step({lo, mid, hi}, {-amp, amp});
}

double DyadicLattice::x(std::size_t i) const {
  return origin + std::ldexp(static_cast<double>(i), -shift_exponent);
}

DyadicLattice grid_lattice(const IndexGrid& grid) {
  DyadicLattice lat;
  const int L = grid.mother_levels_through;
  lat.shift_exponent = L + 1;
  lat.resolution = std::ldexp(1.0, -(L + 1));
  lat.origin = -static_cast<double>(grid.support_half_width);
  lat.cell_count = static_cast<std::size_t>(2 * grid.support_half_width) << (L + 1);
  return lat;
}

TrueCoefficients true_coeffs(const StepFunction& h, const IndexGrid& grid) {
  const double A = grid.support_half_width;
  if (!h.is_zero() && (h.breakpoints.front() < -A || h.breakpoints.back() > A))
    throw std::invalid_argument("true_coeffs: signal support must lie in [-A, A]");

  TrueCoefficients out;
  out.beta.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const StepFunction w = wavelet_fn(grid.indices[i]);
    out.beta[i] = inner_product(h, w);
  }

  // Projection onto the lattice span = per-cell averages.
  const DyadicLattice lat = grid_lattice(grid);
  const PiecewiseLinear F = antiderivative(h);
  std::vector<double> bp(lat.cell_count + 1), vals(lat.cell_count);
  for (std::size_t i = 0; i <= lat.cell_count; ++i) bp[i] = lat.x(i);
  for (std::size_t i = 0; i < lat.cell_count; ++i)
    vals[i] = (eval(F, bp[i + 1]) - eval(F, bp[i])) / lat.resolution;
  const StepFunction projected = make_step(std::move(bp), std::move(vals));
  out.tail_energy = l2_dist_sq(h, projected);
  return out;
}

PiecewiseLinear mean_shift(HaarIndex idx, double T) {
  if (!(T > 0)) throw std::invalid_argument("mean_shift: T must be positive");
  const PiecewiseLinear F = antiderivative(wavelet_fn(idx));
  const double inv_t = 1.0 / T;
  return combine(inv_t, F, -inv_t, shift(F, T));
}

std::vector<StepFunction> cascade(const std::vector<double>& parents, const IndexGrid& grid) {
  const long A = grid.support_half_width;
  const int J = grid.mother_levels_through + 1;
  std::vector<StepFunction> out(grid.size());

  // Finest-level father S_r(phi_{J,0}): each parent covers [U, U + 2^-J),
  // so sweep the +/-1 edge events and scale the counts by 2^{J/2}.
  StepFunction base;
  {
    const double width = std::ldexp(1.0, -J);
    std::vector<std::pair<double, int>> events;
    events.reserve(2 * parents.size());
    for (double u : parents) {
      events.emplace_back(u, +1);
      events.emplace_back(u + width, -1);
    }
    std::sort(events.begin(), events.end());
    std::vector<double> bp, vals;
    long count = 0;
    const double amp = pow2_half(J);
    for (std::size_t i = 0; i < events.size();) {
      const double x = events[i].first;
      while (i < events.size() && events[i].first == x) count += events[i++].second;
      bp.push_back(x);
      if (i < events.size()) vals.push_back(static_cast<double>(count) * amp);
    }
    base = events.empty() ? StepFunction{} : make_step(std::move(bp), std::move(vals));
  }

  // Translates at the finest level, shifted by k * 2^-J.
  long half = A << J;
  std::vector<StepFunction> level(static_cast<std::size_t>(2 * half));
  for (long k = -half; k < half; ++k)
    level[static_cast<std::size_t>(k + half)] = shift(base, dyadic(k, J));

  // Walk levels downward; each mother/father at level j combines the two
  // finer fathers covering its support halves.
  for (int j = J - 1; j >= 0; --j) {
    const long h = A << j;
    std::vector<StepFunction> next(static_cast<std::size_t>(2 * h));
    for (long k = -h; k < h; ++k) {
      const StepFunction& lo = level[static_cast<std::size_t>(2 * k + half)];
      const StepFunction& hi = level[static_cast<std::size_t>(2 * k + 1 + half)];
      out[grid.position({j, k})] = linear_combine({{kSqrtHalf, &hi}, {-kSqrtHalf, &lo}});
      next[static_cast<std::size_t>(k + h)] = linear_combine({{kSqrtHalf, &lo}, {kSqrtHalf, &hi}});
    }
    level = std::move(next);
    half = h;
  }

  // Level-0 fathers are the grid's phi_k.
  for (long k = -A; k < A; ++k)
    out[grid.position({-1, k})] = std::move(level[static_cast<std::size_t>(k + A)]);
  return out;
}

}  // namespace pointrep
