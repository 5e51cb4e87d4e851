#pragma once

#include "stockdata/cli.hpp"

#include <iosfwd>

namespace stockdata {

// Executes a full collection run: resolve constituents, download every
// ticker's history, write per-ticker CSVs and the summary. Returns the
// process exit code: 0 when no ticker failed, 2 otherwise. Setup problems
// (bad dates, unknown index, occupied output directory) throw; the caller
// maps those to exit code 1.
int run(const AppConfig& config, std::ostream& out, std::ostream& err);

}  // namespace stockdata
