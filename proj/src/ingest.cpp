#include "pointrep/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <stdexcept>

namespace pointrep {

namespace {

char normalize_base(char c) {
  switch (std::tolower(static_cast<unsigned char>(c))) {
    case 'a': return 'a';
    case 'c': return 'c';
    case 'g': return 'g';
    case 't': return 't';
    default: return 'n';  // never matches
  }
}

char complement_base(char c) {
  switch (c) {
    case 'a': return 't';
    case 't': return 'a';
    case 'c': return 'g';
    case 'g': return 'c';
    default: return 'n';
  }
}

std::vector<long> find_all(const std::string& text, const std::string& motif) {
  std::vector<long> hits;
  if (motif.empty() || text.size() < motif.size()) return hits;
  for (std::size_t i = 0; i + motif.size() <= text.size(); ++i) {
    std::size_t m = 0;
    while (m < motif.size() && text[i + m] == motif[m]) ++m;
    if (m == motif.size()) hits.push_back(static_cast<long>(i) + 1);  // 1-based
  }
  return hits;
}

}  // namespace

OccurrenceSet read_positions(std::istream& in, std::string source_label) {
  OccurrenceSet occ;
  occ.source = std::move(source_label);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(first, last - first + 1);
    double value;
    try {
      std::size_t used = 0;
      value = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw std::runtime_error("positions: parse error at line " + std::to_string(lineno));
    }
    if (value < 0)
      throw std::runtime_error("positions: negative position at line " + std::to_string(lineno));
    occ.positions.push_back(value);
  }
  std::sort(occ.positions.begin(), occ.positions.end());
  return occ;
}

std::string read_fasta(std::istream& in) {
  std::string sequence, line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '>') continue;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) sequence.push_back(c);
  }
  return sequence;
}

OccurrenceSet scan_fasta(std::string_view sequence, std::string_view motif, long spacer_len) {
  if (motif.empty()) throw std::invalid_argument("scan_fasta: empty motif");
  if (spacer_len < 0) throw std::invalid_argument("scan_fasta: spacer length must be >= 0");
  std::string m;
  m.reserve(motif.size());
  for (char c : motif) {
    const char b = normalize_base(c);
    if (b == 'n') throw std::invalid_argument("scan_fasta: motif must be over {a,c,g,t}");
    m.push_back(b);
  }

  std::string forward;
  forward.reserve(sequence.size());
  for (char c : sequence) forward.push_back(normalize_base(c));

  std::string revcomp;
  revcomp.reserve(forward.size());
  for (auto it = forward.rbegin(); it != forward.rend(); ++it)
    revcomp.push_back(complement_base(*it));

  OccurrenceSet occ;
  occ.unit = PositionUnit::bases;
  const long offset = static_cast<long>(forward.size()) + spacer_len;
  for (long p : find_all(forward, m)) occ.positions.push_back(static_cast<double>(p));
  for (long p : find_all(revcomp, m)) occ.positions.push_back(static_cast<double>(p + offset));
  return occ;  // forward block then reverse block, already ascending
}

OccurrenceSet rescale(const OccurrenceSet& occ, double factor) {
  if (!(factor > 0)) throw std::invalid_argument("rescale: factor must be positive");
  OccurrenceSet out = occ;
  for (double& p : out.positions) p /= factor;
  if (occ.unit == PositionUnit::bases && factor == 1000.0)
    out.unit = PositionUnit::kilobases;
  else if (occ.unit == PositionUnit::kilobases && factor == 0.001)
    out.unit = PositionUnit::bases;
  return out;
}

ProcessSample to_sample(const OccurrenceSet& parents, const OccurrenceSet& children, double T) {
  if (parents.unit != children.unit)
    throw std::invalid_argument("to_sample: parent and child units differ");
  if (!parents.positions.empty() && T <= parents.positions.back())
    throw std::invalid_argument("to_sample: T must exceed every parent position");
  ProcessSample sample;
  sample.parents = parents.positions;
  sample.children = children.positions;
  sample.horizon = T;
  return sample;
}

}  // namespace pointrep
