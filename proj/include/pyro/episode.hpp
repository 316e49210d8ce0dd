#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "pyro/policies.hpp"

namespace pyro {

struct EpisodeConfig {
  GridKind grid = GridKind::cartesian;
  int radius = kCartesianRadius;
  int firefighters = 1;
  int omniscient_until = 0;
  std::string firefighter = "alg1";  // alg1 | alg2 | none
  std::string pyro = "greedy";       // greedy | random | minimax
  std::uint64_t seed = 0;
  int minimax_depth = 3;
  int minimax_breadth = 8;
  int round_budget = 5000;
  // When positive, every open vertex within this distance of the origin is
  // burned at the end of round `grant_round`.
  int grant_radius = 0;
  int grant_round = 0;

  /// One firefighter on the Cartesian grid. Constants scale with the radius.
  static EpisodeConfig alg1(int radius = kCartesianRadius);
  /// Two firefighters on the strong grid. Constants scale with the radius.
  static EpisodeConfig alg2(int radius = kStrongRadius);

  bool experimental() const;
  Ruleset rules() const { return {Spread::single_source, firefighters, omniscient_until}; }
  void validate() const;
  friend bool operator==(const EpisodeConfig&, const EpisodeConfig&) = default;
};

std::shared_ptr<const FirefighterPolicy> make_firefighter(const EpisodeConfig& config);
std::unique_ptr<PyroPolicy> make_pyro(const EpisodeConfig& config,
                                      std::shared_ptr<const FirefighterPolicy> model);

struct RoundRecord {
  enum class Fire { start, source, full, none };

  int round = 0;
  std::vector<Coord> protected_now;
  Fire fire = Fire::start;
  Coord source;  // meaningful for Fire::source only
  std::vector<Coord> newly_burned;
  std::vector<Coord> granted;
  std::size_t burned_total = 0;
  std::size_t protected_total = 0;

  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

enum class Outcome { contained, boundary_burned, budget_exhausted, policy_fault };

const char* to_string(Outcome outcome);

struct EpisodeTrace {
  EpisodeConfig config;
  std::vector<RoundRecord> rounds;
  Outcome outcome = Outcome::contained;
  std::string fault;

  int final_round() const { return rounds.empty() ? 0 : rounds.back().round; }
  /// Largest distance from the origin among recorded burns.
  int max_burned_norm() const;
  friend bool operator==(const EpisodeTrace&, const EpisodeTrace&) = default;
};

EpisodeTrace run_episode(const FirefighterPolicy& firefighter, PyroPolicy& pyro,
                         const EpisodeConfig& config);
/// Builds both policies from the configuration.
EpisodeTrace run_episode(const EpisodeConfig& config);

std::string format_config(const EpisodeConfig& config);
EpisodeConfig parse_config(const std::string& line);

void write_trace(std::ostream& out, const EpisodeTrace& trace);
std::string serialize(const EpisodeTrace& trace);
/// Throws ParseError on malformed input.
EpisodeTrace read_trace(std::istream& in);
EpisodeTrace parse_trace(const std::string& text);

/// ASCII picture of the window after `round` (the last round when negative),
/// cropped to |x|, |y| <= crop (radius + 1 when negative).
std::string render(const EpisodeTrace& trace, int round = -1, int crop = -1);

}  // namespace pyro
