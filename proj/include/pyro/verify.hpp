#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pyro/episode.hpp"

namespace pyro {

struct CheckResult {
  std::string name;
  bool applicable = true;
  bool passed = true;
  int first_violation = -1;  // round, or -1
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool passed() const;
  const CheckResult* find(const std::string& name) const;
  std::string format() const;
};

/// Checks a trace:
///   radius      no burned vertex at distance >= radius
///   replay      game-core reproduces every recorded set, count and the outcome
///   outcome     the episode ended contained
///   alg1-threat after a burn from D_{R-2}, its threat set is fully protected
///               after the next firefighter move (alg1 traces only)
///   alg2-guard  after a burn whose guard offset has |i| <= 2, the guard line
///               is fully protected after the next firefighter move (alg2 only)
VerificationReport verify_trace(const EpisodeTrace& trace);

struct BatteryOptions {
  int random_episodes = 200;
  std::uint64_t master_seed = 1;
  bool greedy = true;
  bool minimax = true;
  unsigned workers = 0;  // 0: hardware concurrency
};

struct EpisodeSummary {
  int id = 0;
  std::string pyro;
  std::uint64_t seed = 0;
  Outcome outcome = Outcome::contained;
  int rounds = 0;
  int max_norm = 0;
  std::size_t burned = 0;
  VerificationReport report;
};

struct BatteryReport {
  EpisodeConfig base;
  std::vector<EpisodeSummary> episodes;  // ordered by id
  double seconds = 0;

  bool passed() const;
  std::string format(bool verbose = false) const;
};

/// Episodes 0..n-1 face random pyros seeded by derive_seed(master, id); the
/// greedy and minimax pyros follow. Episodes run in parallel.
BatteryReport run_battery(const EpisodeConfig& base, const BatteryOptions& options = {});

}  // namespace pyro
