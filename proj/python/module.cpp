#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pointrep/estimator.hpp"
#include "pointrep/haar.hpp"
#include "pointrep/ingest.hpp"
#include "pointrep/risk.hpp"
#include "pointrep/simulate.hpp"
#include "pointrep/stepfn.hpp"

namespace py = pybind11;
using namespace pointrep;

namespace {

SimConfig make_sim_config(double T, py::object mu, py::object n, const StepFunction& signal,
                          double orphan_intensity, std::uint64_t seed) {
  SimConfig config;
  config.horizon = T;
  if (!n.is_none()) {
    config.parent_mode = ParentMode::fixed;
    config.parent_count = n.cast<std::size_t>();
  } else if (!mu.is_none()) {
    config.parent_mode = ParentMode::poisson;
    config.parent_intensity = mu.cast<double>();
  } else {
    throw std::invalid_argument("one of mu or n is required");
  }
  config.signal = signal;
  config.orphan_intensity = orphan_intensity;
  config.seed = seed;
  return config;
}

EstimatorConfig make_est_config(int j0, int A, double gamma, double delta,
                                const std::string& threshold_mode, double d_const,
                                bool mothers_through_j0) {
  EstimatorConfig config;
  config.j0 = j0;
  config.support_half_width = A;
  config.gamma = gamma;
  config.delta = delta;
  config.d_const = d_const;
  if (threshold_mode == "theoretical")
    config.threshold_mode = ThresholdMode::theoretical;
  else if (threshold_mode != "practical")
    throw std::invalid_argument("threshold_mode must be practical or theoretical");
  if (mothers_through_j0) config.mother_levels_through = j0;
  return config;
}

}  // namespace

PYBIND11_MODULE(_pointrep, m) {
  m.doc() = "Reproduction-function estimation for parent/child point processes";

  py::class_<StepFunction>(m, "StepFunction")
      .def(py::init([](std::vector<double> bp, std::vector<double> vals) {
             return make_step(std::move(bp), std::move(vals));
           }),
           py::arg("breakpoints"), py::arg("values"))
      .def(py::init<>())
      .def_readonly("breakpoints", &StepFunction::breakpoints)
      .def_readonly("values", &StepFunction::values)
      .def("__call__", [](const StepFunction& f, double t) { return eval(f, t); })
      .def("integral", [](const StepFunction& f) { return integral(f); })
      .def("l2_norm_sq", [](const StepFunction& f) { return l2_norm_sq(f); })
      .def("is_zero", &StepFunction::is_zero)
      .def("to_csv",
           [](const StepFunction& f) {
             std::ostringstream out;
             write_step_csv(out, f);
             return out.str();
           })
      .def_static("from_csv", [](const std::string& text) {
        std::istringstream in(text);
        return read_step_csv(in);
      });

  m.def("l2_dist_sq", &l2_dist_sq, py::arg("f"), py::arg("g"));
  m.def("builtin_signal", &builtin_signal, py::arg("name"), py::arg("nu") = 4.0);
  m.def("wavelet_fn", [](int j, long k) { return wavelet_fn({j, k}); }, py::arg("j"),
        py::arg("k"));

  py::class_<ProcessSample>(m, "ProcessSample")
      .def(py::init([](std::vector<double> parents, std::vector<double> children, double T) {
             ProcessSample s;
             s.parents = std::move(parents);
             s.children = std::move(children);
             s.horizon = T;
             std::sort(s.parents.begin(), s.parents.end());
             std::sort(s.children.begin(), s.children.end());
             return s;
           }),
           py::arg("parents"), py::arg("children"), py::arg("T"))
      .def_readonly("parents", &ProcessSample::parents)
      .def_readonly("children", &ProcessSample::children)
      .def_readonly("T", &ProcessSample::horizon);

  m.def(
      "simulate",
      [](double T, py::object mu, py::object n, const StepFunction& signal,
         double orphan_intensity, std::uint64_t seed, std::uint64_t rep) {
        return simulate(make_sim_config(T, mu, n, signal, orphan_intensity, seed), rep);
      },
      py::arg("T"), py::arg("mu") = py::none(), py::arg("n") = py::none(),
      py::arg("signal") = StepFunction{}, py::arg("orphan_intensity") = 0.0,
      py::arg("seed") = 0, py::arg("rep") = 0);

  py::class_<CoefficientRow>(m, "CoefficientRow")
      .def_property_readonly("j", [](const CoefficientRow& r) { return r.index.j; })
      .def_property_readonly("k", [](const CoefficientRow& r) { return r.index.k; })
      .def_readonly("beta_hat", &CoefficientRow::beta_hat)
      .def_readonly("b_stat", &CoefficientRow::b_stat)
      .def_readonly("v_hat", &CoefficientRow::v_hat)
      .def_readonly("v_tilde", &CoefficientRow::v_tilde)
      .def_readonly("eta", &CoefficientRow::eta)
      .def_readonly("kept", &CoefficientRow::kept)
      .def_readonly("beta_tilde", &CoefficientRow::beta_tilde);

  py::class_<CoefficientTable>(m, "CoefficientTable")
      .def_readonly("rows", &CoefficientTable::rows)
      .def_readonly("parent_count", &CoefficientTable::parent_count)
      .def_readonly("child_count", &CoefficientTable::child_count)
      .def("to_csv", [](const CoefficientTable& t) {
        std::ostringstream out;
        write_coefficients_csv(out, t);
        return out.str();
      });

  m.def(
      "estimate",
      [](const ProcessSample& sample, int j0, int A, double gamma, double delta,
         const std::string& threshold_mode, double d_const, bool mothers_through_j0,
         unsigned threads) {
        EstimateResult result =
            estimate(sample,
                     make_est_config(j0, A, gamma, delta, threshold_mode, d_const,
                                     mothers_through_j0),
                     threads);
        return py::make_tuple(std::move(result.table), std::move(result.h_tilde));
      },
      py::arg("sample"), py::arg("j0") = 5, py::arg("A") = 10, py::arg("gamma") = 0.18,
      py::arg("delta") = 2.4, py::arg("threshold_mode") = "practical", py::arg("d_const") = 1.0,
      py::arg("mothers_through_j0") = false, py::arg("threads") = 1);

  m.def(
      "risk_surface",
      [](double T, py::object mu, py::object n, const StepFunction& signal,
         std::vector<double> gamma_grid, std::vector<double> delta_grid, std::size_t reps,
         int j0, int A, double orphan_intensity, std::uint64_t seed, unsigned threads) {
        EstimatorConfig est = make_est_config(j0, A, 0.18, 2.4, "practical", 1.0, false);
        RiskSurface surface =
            risk_surface(make_sim_config(T, mu, n, signal, orphan_intensity, seed), est,
                         gamma_grid, delta_grid, reps, threads);
        py::list cells;
        for (const SurfaceCell& c : surface.cells)
          cells.append(py::make_tuple(c.gamma, c.delta, c.mean_risk, c.std_error));
        return cells;
      },
      py::arg("T"), py::arg("mu") = py::none(), py::arg("n") = py::none(),
      py::arg("signal") = StepFunction{}, py::arg("gamma_grid") = std::vector<double>{0.18},
      py::arg("delta_grid") = std::vector<double>{2.4}, py::arg("reps") = 20, py::arg("j0") = 5,
      py::arg("A") = 10, py::arg("orphan_intensity") = 0.0, py::arg("seed") = 0,
      py::arg("threads") = 1);

  m.def(
      "mc_validate",
      [](double T, py::object mu, py::object n, const StepFunction& signal,
         std::vector<std::pair<int, long>> lambdas, std::size_t reps, std::uint64_t seed,
         unsigned threads) {
        std::vector<HaarIndex> idx;
        for (auto [j, k] : lambdas) idx.push_back({j, k});
        py::list out;
        for (const McReport& r :
             mc_validate(make_sim_config(T, mu, n, signal, 0.0, seed), idx, reps, threads))
          out.append(py::make_tuple(r.index.j, r.index.k, r.mean_beta_hat, r.mc_stderr,
                                    r.true_beta, r.emp_var));
        return out;
      },
      py::arg("T"), py::arg("mu") = py::none(), py::arg("n") = py::none(),
      py::arg("signal") = StepFunction{}, py::arg("lambdas") = std::vector<std::pair<int, long>>{},
      py::arg("reps") = 100, py::arg("seed") = 0, py::arg("threads") = 1);

  m.def(
      "oracle_risk",
      [](double T, py::object mu, py::object n, const StepFunction& signal, std::size_t reps,
         int j0, int A, std::uint64_t seed, unsigned threads) {
        return oracle_risk(make_sim_config(T, mu, n, signal, 0.0, seed),
                           build_grid(j0, A, j0 - 1), reps, threads);
      },
      py::arg("T"), py::arg("mu") = py::none(), py::arg("n") = py::none(),
      py::arg("signal") = StepFunction{}, py::arg("reps") = 50, py::arg("j0") = 5,
      py::arg("A") = 10, py::arg("seed") = 0, py::arg("threads") = 1);

  m.def(
      "scan_fasta",
      [](const std::string& sequence, const std::string& motif, long spacer) {
        return scan_fasta(sequence, motif, spacer).positions;
      },
      py::arg("sequence"), py::arg("motif"), py::arg("spacer") = 10000);
}
