#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pyro/solver.hpp"

namespace pyro {

struct ProbeOptions {
  std::uint64_t node_budget = 20'000'000;
};

struct ProbeResult {
  enum class Verdict { contained, pyro_reaches_radius, undetermined };

  Verdict verdict = Verdict::undetermined;
  /// Set when the verdict rests on lines cut off by the depth limit, so it
  /// says nothing beyond the explored horizon.
  bool horizon_limited = false;
  int radius = 0;
  int firefighters = 0;
  int depth = 0;
  std::uint64_t nodes = 0;
  std::vector<Move> principal_variation;
};

const char* to_string(ProbeResult::Verdict verdict);

/// Depth-limited minimax of the Pyro game from a single burn at the origin.
/// Depth counts rounds. Reaching distance `radius` is a pyro win; a position in
/// which the fire cannot move is a firefighter win.
ProbeResult bounded_minimax_grid(GridKind kind, int radius, int k, int depth,
                                 const ProbeOptions& options = {});

std::string format_probe_report(const ProbeResult& result, GridKind kind);

}  // namespace pyro
