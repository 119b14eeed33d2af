#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pointrep/estimator.hpp"
#include "pointrep/rng.hpp"
#include "pointrep/stepfn.hpp"

namespace pointrep {

enum class ParentMode { fixed, poisson };

struct SimConfig {
  double horizon = 0.0;  // T
  ParentMode parent_mode = ParentMode::poisson;
  std::size_t parent_count = 0;     // fixed mode: exactly n parents
  double parent_intensity = 0.0;    // poisson mode: mu
  StepFunction signal;              // reproduction function h, pieces >= 0
  std::string signal_label = "custom";
  double orphan_intensity = 0.0;    // homogeneous noise on [0, T+1]
  std::uint64_t seed = 0;
};

/// signal1 = nu 1_[0,1); signal2 = nu (8/3)(1_[0.5,0.625) + 1_[1,1.25));
/// signal3 = nu (1/4)(1_[-0.75,-0.5) + 1_[4.25,8)). Throws on unknown name.
StepFunction builtin_signal(const std::string& name, double nu);

std::vector<double> gen_parents(const SimConfig& config, SplitMix64& rng);

/// Exact sampler: per parent and per piece [a,b) of value c, a Poisson
/// count with mean c*(b-a), placed uniformly on [U+a, U+b). Rejects
/// signals with negative pieces.
std::vector<double> gen_children(const std::vector<double>& parents, const StepFunction& h,
                                 SplitMix64& rng);

std::vector<double> gen_orphans(double T, double intensity, SplitMix64& rng);

/// Parents plus merged children/orphans; replication `rep` draws from the
/// (seed, rep) stream so runs are reproducible under any parallel layout.
ProcessSample simulate(const SimConfig& config, std::uint64_t rep = 0);

/// CSV with header `role,position`, role in {parent, child}.
void write_sample_csv(std::ostream& out, const ProcessSample& sample);
ProcessSample read_sample_csv(std::istream& in, double horizon);

/// Sidecar metadata: {"T":..., "n":..., "seed":..., "signal":...}.
std::string sample_metadata_json(const SimConfig& config, const ProcessSample& sample);
double horizon_from_metadata_json(const std::string& text);

}  // namespace pointrep
