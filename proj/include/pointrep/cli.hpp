#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pointrep/stepfn.hpp"

namespace pointrep::cli {

/// Entry point behind the `pointrep` binary; also callable in-process.
/// Returns 0 on success, 1 on data errors, 2 on flag errors.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

/// Merged-breakpoint CSV `x,estimate[,truth]`: every breakpoint appears with
/// the piece value on each side so step plots render without interpolation.
/// With nothing to plot a single zero row pair is emitted.
void emit_reconstruction_plotdata(std::ostream& out, const StepFunction& h_tilde,
                                  const StepFunction* truth);

}  // namespace pointrep::cli
