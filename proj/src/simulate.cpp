#include "pointrep/simulate.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pointrep {

StepFunction builtin_signal(const std::string& name, double nu) {
  if (nu < 0) throw std::invalid_argument("builtin_signal: nu must be nonnegative");
  if (name == "signal1") return make_step({0.0, 1.0}, {nu});
  if (name == "signal2") {
    const double amp = nu * (8.0 / 3.0);
    return make_step({0.5, 0.625, 1.0, 1.25}, {amp, 0.0, amp});
  }
  if (name == "signal3") {
    const double amp = nu * 0.25;
    return make_step({-0.75, -0.5, 4.25, 8.0}, {amp, 0.0, amp});
  }
  throw std::invalid_argument("builtin_signal: unknown name '" + name + "'");
}

std::vector<double> gen_parents(const SimConfig& config, SplitMix64& rng) {
  if (!(config.horizon > 0)) throw std::invalid_argument("gen_parents: T must be positive");
  std::size_t n = config.parent_count;
  if (config.parent_mode == ParentMode::poisson) {
    if (!(config.parent_intensity > 0))
      throw std::invalid_argument("gen_parents: mu must be positive");
    n = rng.next_poisson(config.parent_intensity * config.horizon);
  }
  std::vector<double> parents(n);
  for (double& u : parents) u = rng.next_uniform(config.horizon);
  std::sort(parents.begin(), parents.end());
  return parents;
}

std::vector<double> gen_children(const std::vector<double>& parents, const StepFunction& h,
                                 SplitMix64& rng) {
  for (double v : h.values)
    if (v < 0) throw std::invalid_argument("gen_children: reproduction function must be >= 0");
  std::vector<double> children;
  for (double u : parents) {
    for (std::size_t p = 0; p < h.values.size(); ++p) {
      if (h.values[p] == 0.0) continue;
      const double a = h.breakpoints[p], b = h.breakpoints[p + 1];
      const std::uint64_t count = rng.next_poisson(h.values[p] * (b - a));
      for (std::uint64_t c = 0; c < count; ++c)
        children.push_back(u + a + rng.next_uniform(b - a));
    }
  }
  std::sort(children.begin(), children.end());
  return children;
}

std::vector<double> gen_orphans(double T, double intensity, SplitMix64& rng) {
  if (intensity < 0) throw std::invalid_argument("gen_orphans: intensity must be nonnegative");
  if (intensity == 0.0) return {};
  const double span = T + 1.0;
  std::vector<double> orphans(rng.next_poisson(intensity * span));
  for (double& x : orphans) x = rng.next_uniform(span);
  std::sort(orphans.begin(), orphans.end());
  return orphans;
}

ProcessSample simulate(const SimConfig& config, std::uint64_t rep) {
  SplitMix64 rng(config.seed, rep);
  ProcessSample sample;
  sample.horizon = config.horizon;
  sample.parents = gen_parents(config, rng);
  sample.children = gen_children(sample.parents, config.signal, rng);
  if (config.orphan_intensity > 0) {
    std::vector<double> orphans = gen_orphans(config.horizon, config.orphan_intensity, rng);
    std::vector<double> merged(sample.children.size() + orphans.size());
    std::merge(sample.children.begin(), sample.children.end(), orphans.begin(), orphans.end(),
               merged.begin());
    sample.children = std::move(merged);
  }
  return sample;
}

void write_sample_csv(std::ostream& out, const ProcessSample& sample) {
  out << "role,position\n";
  for (double u : sample.parents) out << "parent," << fmt_full(u) << '\n';
  for (double x : sample.children) out << "child," << fmt_full(x) << '\n';
}

ProcessSample read_sample_csv(std::istream& in, double horizon) {
  ProcessSample sample;
  sample.horizon = horizon;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (lineno == 1 && line.rfind("role,", 0) == 0) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("sample csv: missing comma at line " + std::to_string(lineno));
    const std::string role = line.substr(0, comma);
    double pos;
    try {
      std::size_t used = 0;
      pos = std::stod(line.substr(comma + 1), &used);
      if (used != line.size() - comma - 1) throw std::invalid_argument(line);
    } catch (const std::exception&) {
      throw std::runtime_error("sample csv: bad position at line " + std::to_string(lineno));
    }
    if (role == "parent")
      sample.parents.push_back(pos);
    else if (role == "child")
      sample.children.push_back(pos);
    else
      throw std::runtime_error("sample csv: unknown role '" + role + "' at line " +
                               std::to_string(lineno));
  }
  std::sort(sample.parents.begin(), sample.parents.end());
  std::sort(sample.children.begin(), sample.children.end());
  return sample;
}

std::string sample_metadata_json(const SimConfig& config, const ProcessSample& sample) {
  nlohmann::ordered_json meta;
  meta["T"] = config.horizon;
  meta["n"] = sample.parent_count();
  meta["seed"] = config.seed;
  meta["signal"] = config.signal_label;
  return meta.dump(2) + "\n";
}

double horizon_from_metadata_json(const std::string& text) {
  const auto meta = nlohmann::json::parse(text);
  if (!meta.contains("T")) throw std::runtime_error("sample metadata: missing field 'T'");
  return meta.at("T").get<double>();
}

}  // namespace pointrep
