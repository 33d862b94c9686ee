#pragma once

#include <iosfwd>

#include "feplast/config.hpp"

namespace feplast {

// Orchestrates one batch solve: validate the config, build the mesh, run the
// driver while streaming the convergence CSV, then write the field snapshot
// and summary. Returns a process exit code identifying the failed stage:
// 0 success, 1 config (validation, output directory), 2 mesh construction,
// 3 everything during the solve. Partial artifacts are flushed before a
// nonzero return.
int run(const RunConfig& config, std::ostream& diagnostics);

} // namespace feplast
