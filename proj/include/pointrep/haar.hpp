#pragma once

#include <cstddef>
#include <vector>

#include "pointrep/stepfn.hpp"

namespace pointrep {

/// Wavelet index (j,k); j = -1 denotes father translates phi_k.
struct HaarIndex {
  int j = -1;
  long k = 0;
  bool operator==(const HaarIndex&) const = default;
};

/// Finite estimation grid: fathers k in [-A, A-1], mothers at level j with
/// k in [-2^j A, 2^j A - 1] for 0 <= j <= mother_levels_through.
struct IndexGrid {
  int j0 = 5;
  int support_half_width = 10;  // A
  int mother_levels_through = 4;
  std::vector<HaarIndex> indices;  // fathers first, then levels ascending, k ascending

  std::size_t size() const { return indices.size(); }
  /// Position of idx in `indices`; throws std::invalid_argument if off-grid.
  std::size_t position(HaarIndex idx) const;
};

/// mother_levels_through must be j0-1 (matches the level-by-level recursion)
/// or j0 (the grid the theory states); j0 >= 1, A >= 1.
IndexGrid build_grid(int j0, int A, int mother_levels_through);

/// Exact step function for phi_k / psi_{j,k}: the mother at level j takes
/// values -2^{j/2} and +2^{j/2} on the two dyadic halves of its support.
StepFunction wavelet_fn(HaarIndex idx);

/// 2^{j/2} with deterministic rounding (ldexp + sqrt(2) constant).
double pow2_half(int j);

/// Dyadic cells of width 2^{-(mother_levels_through+1)} covering [-A, A];
/// the span of the grid's wavelet family.
struct DyadicLattice {
  double origin;       // -A
  double resolution;   // cell width
  std::size_t cell_count;
  int shift_exponent;  // resolution = 2^-shift_exponent

  double x(std::size_t i) const;  // left edge of cell i (exact dyadic value)
};
DyadicLattice grid_lattice(const IndexGrid& grid);

struct TrueCoefficients {
  std::vector<double> beta;  // aligned with grid.indices
  double tail_energy = 0.0;  // ||h - projection onto the lattice span||_2^2
};

/// Exact integrals beta = integral of h * phi_lambda; h must be supported in
/// [-A, A].
TrueCoefficients true_coeffs(const StepFunction& h, const IndexGrid& grid);

/// t -> (1/T) (F(t) - F(t-T)) with F the antiderivative of phi_lambda; the
/// expectation of phi_lambda(t - U) under U uniform on [0,T].
PiecewiseLinear mean_shift(HaarIndex idx, double T);

/// S_r(phi_lambda) = sum_i phi_lambda(. - U_i) for every lambda in the grid,
/// via the level-by-level recursion: build S_r(phi_{J,0}) at the finest level
/// J = mother_levels_through+1, shift to get the other translates, then walk
/// down combining adjacent pairs. Returns functions aligned with
/// grid.indices. Empty parent list yields all-zero functions.
std::vector<StepFunction> cascade(const std::vector<double>& parents, const IndexGrid& grid);

}  // namespace pointrep
