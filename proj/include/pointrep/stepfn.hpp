#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

namespace pointrep {

/// Compactly supported piecewise-constant function.
///
/// Equals values[i] on [breakpoints[i], breakpoints[i+1]) and 0 outside
/// [breakpoints.front(), breakpoints.back()). Empty vectors encode the zero
/// function. Canonical form: breakpoints strictly increasing, no two adjacent
/// pieces with the same value, no leading/trailing zero pieces (interior zero
/// pieces are kept).
struct StepFunction {
  std::vector<double> breakpoints;
  std::vector<double> values;

  bool is_zero() const { return values.empty(); }
  std::size_t piece_count() const { return values.size(); }
};

/// Builds a canonical StepFunction; throws std::invalid_argument on
/// non-increasing breakpoints or mismatched lengths.
StepFunction make_step(std::vector<double> breakpoints, std::vector<double> values);

/// 1_[a,b). Requires a < b.
StepFunction indicator(double a, double b);

StepFunction shift(const StepFunction& f, double dx);

/// Value at t under the half-open convention; 0 outside support.
double eval(const StepFunction& f, double t);

/// Exact pointwise sum of coef*f over all terms, canonicalized.
StepFunction linear_combine(const std::vector<std::pair<double, const StepFunction*>>& terms);

double integral(const StepFunction& f);
double l2_norm_sq(const StepFunction& f);

/// Exact integral of (f-g)^2 over the merged breakpoint partition.
double l2_dist_sq(const StepFunction& f, const StepFunction& g);

/// Exact integral of f*g.
double inner_product(const StepFunction& f, const StepFunction& g);

/// Piecewise-affine function with jumps allowed.
///
/// Segment i covers [nodes[i], nodes[i+1]) with value
/// left_values[i] + slopes[i]*(t - nodes[i]). Outside the node span the
/// function is constant: tail_left on (-inf, nodes.front()), tail_right on
/// [nodes.back(), +inf). Both tails are 0 except for antiderivatives. With no
/// nodes the function is constant tail_left (== tail_right) everywhere.
struct PiecewiseLinear {
  std::vector<double> nodes;
  std::vector<double> left_values;
  std::vector<double> slopes;
  double tail_left = 0.0;
  double tail_right = 0.0;

  std::size_t segment_count() const { return slopes.size(); }
};

double eval(const PiecewiseLinear& g, double t);

/// Continuous F with F(breakpoints.front()) = 0, slope values[i] on each
/// piece, constant (= total integral) right of support and 0 left of it.
PiecewiseLinear antiderivative(const StepFunction& f);

PiecewiseLinear to_piecewise_linear(const StepFunction& f);
PiecewiseLinear shift(const PiecewiseLinear& g, double dx);

/// a*f + b*g, exact on the merged node set.
PiecewiseLinear combine(double a, const PiecewiseLinear& f, double b, const PiecewiseLinear& g);

/// Exact sup of |g| over R from segment endpoint values and one-sided right
/// limits (affine pieces attain extremes at endpoints).
double sup_abs(const PiecewiseLinear& g);

/// CSV with header `left,right,value`, one row per piece, %.17g precision.
void write_step_csv(std::ostream& out, const StepFunction& f);
StepFunction read_step_csv(std::istream& in);

/// %.17g rendering used by every CSV writer (value round-trips exactly).
std::string fmt_full(double x);

}  // namespace pointrep
