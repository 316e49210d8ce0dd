#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pyro/boundary.hpp"
#include "pyro/game.hpp"

namespace pyro {

/// The pyro's last single-source burn. Absent after a full-spread round.
struct BurnEvent {
  VertexId source = 0;
  std::vector<VertexId> newly_burned;
};

class FirefighterPolicy {
 public:
  virtual ~FirefighterPolicy() = default;
  virtual std::string name() const = 0;
  /// Vertices to protect at the start of the next round. Must be a pure
  /// function of its arguments; the minimax adversary calls it on
  /// hypothetical positions.
  virtual std::vector<VertexId> choose(const GameState& s,
                                       const std::optional<BurnEvent>& last) const = 0;
};

class PyroPolicy {
 public:
  virtual ~PyroPolicy() = default;
  virtual std::string name() const = 0;
  /// Burn source for a position with at least one legal pyro move.
  virtual VertexId choose(const GameState& s) = 0;
};

/// One firefighter on the Cartesian grid, sphere of the given radius.
class Alg1Policy final : public FirefighterPolicy {
 public:
  explicit Alg1Policy(int radius = kCartesianRadius);
  std::string name() const override { return "alg1"; }
  std::vector<VertexId> choose(const GameState& s,
                               const std::optional<BurnEvent>& last) const override;
  const BoundarySets& sets() const { return sets_; }

 private:
  std::optional<Coord> from_threat_set(const GameState& s, Coord source) const;
  std::optional<Coord> fallback(const GameState& s) const;

  BoundarySets sets_;
  std::vector<Coord> sphere_sorted_;
};

/// Two firefighters on the strong grid, sphere of the given radius.
class Alg2Policy final : public FirefighterPolicy {
 public:
  explicit Alg2Policy(int radius = kStrongRadius);
  std::string name() const override { return "alg2"; }
  std::vector<VertexId> choose(const GameState& s,
                               const std::optional<BurnEvent>& last) const override;
  const BoundarySets& sets() const { return sets_; }
  bool in_remainder(Coord c) const;

 private:
  BoundarySets sets_;
  std::vector<Coord> remainder_sorted_;
};

/// Row or column of five cells guarding the sphere near a burn source.
struct GuardLine {
  bool row = true;   // rule a: the five cells share the target's y
  int offset = 0;    // i in {-4..-1, 1..4}
  Coord target;      // (x, y+i) for a row, (x+i, y) for a column
  std::vector<Coord> cells;
};

/// Smallest |i| (positive first) with (x, y+i) or (x+i, y) in the remainder,
/// the row taking precedence. Empty when no offset up to 4 qualifies.
std::optional<GuardLine> guard_line(const Alg2Policy& policy, Coord source);

class IdlePolicy final : public FirefighterPolicy {
 public:
  std::string name() const override { return "none"; }
  std::vector<VertexId> choose(const GameState&, const std::optional<BurnEvent>&) const override {
    return {};
  }
};

/// Highest norm among the open neighbors of `source`, or -1.
int reach(const GameState& s, VertexId source);

/// Source whose best open neighbor lies closest to the sphere; ties go to the
/// lexicographically smallest source.
class GreedyPyro final : public PyroPolicy {
 public:
  std::string name() const override { return "greedy"; }
  VertexId choose(const GameState& s) override;
};

class RandomPyro final : public PyroPolicy {
 public:
  explicit RandomPyro(std::uint64_t seed) : rng_(seed) {}
  std::string name() const override { return "random"; }
  VertexId choose(const GameState& s) override;

 private:
  std::mt19937_64 rng_;
};

/// Depth-limited search for the pyro against a known firefighter policy.
/// Only the `breadth` sources with the highest reach are expanded per ply.
/// A line that burns a vertex at distance >= radius scores as a win; other
/// lines score by the farthest vertex they burn, then by the reach left
/// after the firefighter's reply. Depth 1 agrees with GreedyPyro whenever one
/// source has strictly greater reach.
class MinimaxPyro final : public PyroPolicy {
 public:
  MinimaxPyro(std::shared_ptr<const FirefighterPolicy> model, int radius, int depth = 3,
              int breadth = 8);
  std::string name() const override { return "minimax"; }
  VertexId choose(const GameState& s) override;

 private:
  struct Score {
    int primary;
    int secondary;
    friend auto operator<=>(const Score&, const Score&) = default;
  };
  Score search(const GameState& s, int depth, int deepest, VertexId* pick) const;
  std::vector<VertexId> ranked_sources(const GameState& s) const;

  std::shared_ptr<const FirefighterPolicy> model_;
  int radius_;
  int depth_;
  int breadth_;
};

/// Deterministic 64-bit seed for episode `id` under `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t id);

}  // namespace pyro
