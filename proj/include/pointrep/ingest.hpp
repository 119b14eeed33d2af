#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pointrep/estimator.hpp"

namespace pointrep {

enum class PositionUnit { bases, kilobases };

struct OccurrenceSet {
  std::vector<double> positions;  // sorted, nonnegative
  PositionUnit unit = PositionUnit::bases;
  std::string source;
};

/// One decimal per line; '#' starts a comment; blank lines skipped. Throws
/// std::runtime_error with the offending line number on malformed input.
OccurrenceSet read_positions(std::istream& in, std::string source_label = "");

/// Concatenated sequence letters; '>' header lines skipped, records joined
/// in file order, whitespace dropped.
std::string read_fasta(std::istream& in);

/// 1-based occurrence positions of the motif's first base over the virtual
/// sequence: forward strand (length L), then spacer_len sentinel bases that
/// never match, then the reverse complement of the strand. Case-insensitive;
/// letters outside {a,c,g,t} never match.
OccurrenceSet scan_fasta(std::string_view sequence, std::string_view motif, long spacer_len);

/// Positions divided by factor (> 0). A 1000x rescale from bases flips the
/// unit to kilobases (and back for 1/1000 from kilobases).
OccurrenceSet rescale(const OccurrenceSet& occ, double factor);

/// Assembles the estimation input; units must match and T must exceed every
/// parent position.
ProcessSample to_sample(const OccurrenceSet& parents, const OccurrenceSet& children, double T);

}  // namespace pointrep
