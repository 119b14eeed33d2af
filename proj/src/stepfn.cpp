#include "pointrep/stepfn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace pointrep {

namespace {

// Merge adjacent equal-valued pieces and trim zero pieces at both ends.
// Comparisons are exact; dyadic breakpoints stay exact by construction.
StepFunction canonicalize(std::vector<double> bp, std::vector<double> vals) {
  std::vector<double> cb, cv;
  cb.reserve(bp.size());
  cv.reserve(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (!cv.empty() && cv.back() == vals[i]) {
      cb.back() = bp[i + 1];  // extend previous piece
      continue;
    }
    if (cv.empty()) cb.push_back(bp[i]);
    cv.push_back(vals[i]);
    cb.push_back(bp[i + 1]);
  }
  std::size_t lo = 0, hi = cv.size();
  while (lo < hi && cv[lo] == 0.0) ++lo;
  while (hi > lo && cv[hi - 1] == 0.0) --hi;
  if (lo == hi) return {};
  StepFunction out;
  out.breakpoints.assign(cb.begin() + static_cast<std::ptrdiff_t>(lo),
                         cb.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
  out.values.assign(cv.begin() + static_cast<std::ptrdiff_t>(lo),
                    cv.begin() + static_cast<std::ptrdiff_t>(hi));
  return out;
}

// Index of the piece containing t, or npos when outside support.
std::size_t piece_index(const std::vector<double>& bp, double t) {
  if (bp.empty() || t < bp.front() || t >= bp.back()) return static_cast<std::size_t>(-1);
  auto it = std::upper_bound(bp.begin(), bp.end(), t);
  return static_cast<std::size_t>(it - bp.begin()) - 1;
}

}  // namespace

StepFunction make_step(std::vector<double> breakpoints, std::vector<double> values) {
  if (breakpoints.empty() && values.empty()) return {};
  if (breakpoints.size() != values.size() + 1)
    throw std::invalid_argument("make_step: need one more breakpoint than values");
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    if (!(breakpoints[i] < breakpoints[i + 1]))
      throw std::invalid_argument("make_step: breakpoints must be strictly increasing");
  for (double x : breakpoints)
    if (!std::isfinite(x)) throw std::invalid_argument("make_step: non-finite breakpoint");
  return canonicalize(std::move(breakpoints), std::move(values));
}

StepFunction indicator(double a, double b) { return make_step({a, b}, {1.0}); }

StepFunction shift(const StepFunction& f, double dx) {
  StepFunction out = f;
  for (double& x : out.breakpoints) x += dx;
  return out;
}

double eval(const StepFunction& f, double t) {
  std::size_t i = piece_index(f.breakpoints, t);
  return i == static_cast<std::size_t>(-1) ? 0.0 : f.values[i];
}

StepFunction linear_combine(const std::vector<std::pair<double, const StepFunction*>>& terms) {
  std::vector<double> grid;
  for (const auto& [c, f] : terms) grid.insert(grid.end(), f->breakpoints.begin(), f->breakpoints.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.size() < 2) return {};

  std::vector<std::size_t> pos(terms.size(), 0);  // next breakpoint to pass, per term
  std::vector<double> vals(grid.size() - 1, 0.0);
  for (std::size_t cell = 0; cell + 1 < grid.size(); ++cell) {
    const double left = grid[cell];
    double acc = 0.0;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const auto& bp = terms[k].second->breakpoints;
      while (pos[k] < bp.size() && bp[pos[k]] <= left) ++pos[k];
      // piece pos[k]-1 is active iff 1 <= pos[k] <= piece count
      if (pos[k] >= 1 && pos[k] <= terms[k].second->values.size())
        acc += terms[k].first * terms[k].second->values[pos[k] - 1];
    }
    vals[cell] = acc;
  }
  return canonicalize(std::move(grid), std::move(vals));
}

double integral(const StepFunction& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    acc += f.values[i] * (f.breakpoints[i + 1] - f.breakpoints[i]);
  return acc;
}

double l2_norm_sq(const StepFunction& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    acc += f.values[i] * f.values[i] * (f.breakpoints[i + 1] - f.breakpoints[i]);
  return acc;
}

double l2_dist_sq(const StepFunction& f, const StepFunction& g) {
  std::vector<double> grid;
  grid.reserve(f.breakpoints.size() + g.breakpoints.size());
  grid.insert(grid.end(), f.breakpoints.begin(), f.breakpoints.end());
  grid.insert(grid.end(), g.breakpoints.begin(), g.breakpoints.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  double acc = 0.0;
  std::size_t pf = 0, pg = 0;
  for (std::size_t cell = 0; cell + 1 < grid.size(); ++cell) {
    const double left = grid[cell];
    while (pf < f.breakpoints.size() && f.breakpoints[pf] <= left) ++pf;
    while (pg < g.breakpoints.size() && g.breakpoints[pg] <= left) ++pg;
    const double vf = (pf >= 1 && pf <= f.values.size()) ? f.values[pf - 1] : 0.0;
    const double vg = (pg >= 1 && pg <= g.values.size()) ? g.values[pg - 1] : 0.0;
    const double d = vf - vg;
    acc += d * d * (grid[cell + 1] - left);
  }
  return acc;
}

double inner_product(const StepFunction& f, const StepFunction& g) {
  std::vector<double> grid;
  grid.reserve(f.breakpoints.size() + g.breakpoints.size());
  grid.insert(grid.end(), f.breakpoints.begin(), f.breakpoints.end());
  grid.insert(grid.end(), g.breakpoints.begin(), g.breakpoints.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  double acc = 0.0;
  std::size_t pf = 0, pg = 0;
  for (std::size_t cell = 0; cell + 1 < grid.size(); ++cell) {
    const double left = grid[cell];
    while (pf < f.breakpoints.size() && f.breakpoints[pf] <= left) ++pf;
    while (pg < g.breakpoints.size() && g.breakpoints[pg] <= left) ++pg;
    const double vf = (pf >= 1 && pf <= f.values.size()) ? f.values[pf - 1] : 0.0;
    const double vg = (pg >= 1 && pg <= g.values.size()) ? g.values[pg - 1] : 0.0;
    acc += vf * vg * (grid[cell + 1] - left);
  }
  return acc;
}

double eval(const PiecewiseLinear& g, double t) {
  if (g.nodes.empty()) return g.tail_left;
  if (t < g.nodes.front()) return g.tail_left;
  if (t >= g.nodes.back()) return g.tail_right;
  auto it = std::upper_bound(g.nodes.begin(), g.nodes.end(), t);
  std::size_t i = static_cast<std::size_t>(it - g.nodes.begin()) - 1;
  return g.left_values[i] + g.slopes[i] * (t - g.nodes[i]);
}

PiecewiseLinear antiderivative(const StepFunction& f) {
  PiecewiseLinear F;
  if (f.is_zero()) return F;
  F.nodes = f.breakpoints;
  F.left_values.resize(f.values.size());
  F.slopes = f.values;
  double acc = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    F.left_values[i] = acc;
    acc += f.values[i] * (f.breakpoints[i + 1] - f.breakpoints[i]);
  }
  F.tail_left = 0.0;
  F.tail_right = acc;
  return F;
}

PiecewiseLinear to_piecewise_linear(const StepFunction& f) {
  PiecewiseLinear g;
  if (f.is_zero()) return g;
  g.nodes = f.breakpoints;
  g.left_values = f.values;
  g.slopes.assign(f.values.size(), 0.0);
  return g;
}

PiecewiseLinear shift(const PiecewiseLinear& g, double dx) {
  PiecewiseLinear out = g;
  for (double& x : out.nodes) x += dx;
  return out;
}

PiecewiseLinear combine(double a, const PiecewiseLinear& f, double b, const PiecewiseLinear& g) {
  PiecewiseLinear out;
  out.tail_left = a * f.tail_left + b * g.tail_left;
  out.tail_right = a * f.tail_right + b * g.tail_right;
  std::vector<double> grid;
  grid.reserve(f.nodes.size() + g.nodes.size());
  grid.insert(grid.end(), f.nodes.begin(), f.nodes.end());
  grid.insert(grid.end(), g.nodes.begin(), g.nodes.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.size() < 2) return out;

  out.nodes = grid;
  out.left_values.resize(grid.size() - 1);
  out.slopes.resize(grid.size() - 1);
  std::size_t pf = 0, pg = 0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double left = grid[i];
    while (pf < f.nodes.size() && f.nodes[pf] <= left) ++pf;
    while (pg < g.nodes.size() && g.nodes[pg] <= left) ++pg;
    const double sf = (pf >= 1 && pf <= f.slopes.size()) ? f.slopes[pf - 1] : 0.0;
    const double sg = (pg >= 1 && pg <= g.slopes.size()) ? g.slopes[pg - 1] : 0.0;
    out.left_values[i] = a * eval(f, left) + b * eval(g, left);
    out.slopes[i] = a * sf + b * sg;
  }
  return out;
}

double sup_abs(const PiecewiseLinear& g) {
  double best = std::max(std::abs(g.tail_left), std::abs(g.tail_right));
  for (std::size_t i = 0; i < g.slopes.size(); ++i) {
    const double at_left = std::abs(g.left_values[i]);
    const double at_right =
        std::abs(g.left_values[i] + g.slopes[i] * (g.nodes[i + 1] - g.nodes[i]));
    best = std::max({best, at_left, at_right});
  }
  return best;
}

std::string fmt_full(double x) {
  char buf[40];
  for (int precision : {15, 16, 17}) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

void write_step_csv(std::ostream& out, const StepFunction& f) {
  out << "left,right,value\n";
  for (std::size_t i = 0; i < f.values.size(); ++i)
    out << fmt_full(f.breakpoints[i]) << ',' << fmt_full(f.breakpoints[i + 1]) << ','
        << fmt_full(f.values[i]) << '\n';
}

StepFunction read_step_csv(std::istream& in) {
  std::string line;
  std::vector<double> bp, vals;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (lineno == 1 && line.rfind("left,", 0) == 0) continue;
    std::istringstream row(line);
    std::string cell;
    double v[3];
    for (int k = 0; k < 3; ++k) {
      if (!std::getline(row, cell, ','))
        throw std::runtime_error("step csv: missing field at line " + std::to_string(lineno));
      try {
        std::size_t used = 0;
        v[k] = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw std::runtime_error("step csv: bad number at line " + std::to_string(lineno));
      }
    }
    if (!bp.empty() && v[0] != bp.back())
      throw std::runtime_error("step csv: pieces not contiguous at line " + std::to_string(lineno));
    if (bp.empty()) bp.push_back(v[0]);
    bp.push_back(v[1]);
    vals.push_back(v[2]);
  }
  return make_step(std::move(bp), std::move(vals));
}

}  // namespace pointrep
