#pragma once

// Analysis pipeline, report serialization and the command-line runner.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "skewgroup/config.hpp"
#include "skewgroup/error.hpp"
#include "skewgroup/groupoid.hpp"
#include "skewgroup/json_io.hpp"
#include "skewgroup/orbits.hpp"

namespace skewgroup {

enum ExitCode : int { kExitOk = 0, kExitInvalidInput = 1, kExitBudget = 2, kExitInvariant = 3 };

struct AnalyzeOptions {
  std::size_t budget = kDefaultBudget;
  GeneratorMode mode = GeneratorMode::AllTriples;
  bool orbits = false;
  /// "[x:y:z:w]"; the deterministic generic point of Linf when absent.
  std::optional<std::string> seed_point;
  bool oracle = false;
  /// Defaults to 10 * |G| * lines.
  std::optional<std::size_t> orbit_budget;
  std::uint64_t ratio_bound = 120;
};

struct Outcome {
  Json report;
  int exit_code = kExitOk;
};

Json validation_json(const ValidationReport& r);
Json transversal_json(const TransversalReport& r);
Json abelian_json(const AbelianReport& r);
Json generators_json(const GeneratorSet& g);
Json ratio_json(const RatioReport& r);
/// order, label, census, budget_hit, witnesses.
Json group_json(const GroupClosure& g, const std::optional<Classification>& c);
Json orbit_json(const OrbitReport& r);

Outcome validate_command(const LineConfig& cfg);
Outcome transversal_command(const LineConfig& cfg);
Outcome group_command(const LineConfig& cfg, const AnalyzeOptions& opt);
Outcome orbit_command(const LineConfig& cfg, const AnalyzeOptions& opt);
/// validate, transversals, abelian prediction, generators, closure,
/// classification, eigenvalue ratios and optionally orbits.
Outcome analyze(const LineConfig& cfg, const AnalyzeOptions& opt);

/// {0, inf} u C_n u t C_n over Q(zeta_level) for each t: skewness, ratio
/// certificate and closure order. Candidates default to r * zeta^k with
/// r in {1, -1, 2, -2, 1/2, -1/2}.
Outcome search_scaled(unsigned n, unsigned level, const std::vector<std::string>& ts, std::size_t budget);
/// Diagonal configurations {0, inf, I, D_2, ..., D_{extra+1}} built from
/// pairs of level-th roots of unity; rows where every eigenvalue ratio is a
/// root of unity, with closure orders.
Outcome search_diagonal(unsigned level, unsigned extra, std::size_t budget, std::size_t limit);

int exit_code_for(const Error& e);

/// Entry point of the command-line tool.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace skewgroup
