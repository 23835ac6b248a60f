#pragma once

// Command-line front end. run_cli is the whole program minus main(), so
// tests can drive it with in-memory streams.
//
// Exit codes: 0 ok, 1 usage or parse error, 2 precondition, 3 budget,
// 4 internal invariant violation.

#include <cstdint>
#include <ostream>
#include <string>

#include "tau2/structure.hpp"
#include "tau2/textio.hpp"

namespace tau2 {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitPrecondition = 2,
  kExitBudget = 3,
  kExitInvariant = 4,
};

/// Deterministic JSON rendering of analyze(p), two-space indented.
std::string analysis_json(const Tau2Presentation& p, const StructureReport& r);

/// One CSV row per (ell, property), with a header line.
std::string run_experiment(const ExperimentConfig& cfg, unsigned threads = 1,
                           std::uint64_t budget = kDefaultEnumerationBudget);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tau2
