#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "pyro/game.hpp"

namespace pyro {

/// The search would exceed its configured resource budget. Never replaced by
/// an approximate answer.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Move {
  enum class Kind { protect, burn, full_spread };
  Kind kind = Kind::protect;
  std::vector<VertexId> vertices;  // protected set, or {source} for a burn

  friend bool operator==(const Move&, const Move&) = default;
};

std::string describe(const Move& move, const Topology& topology);

struct SolverOptions {
  /// Restrict protections to open vertices the fire can still reach.
  bool cone_pruning = true;
  /// Enumerate moves in descending instead of ascending vertex order.
  bool reverse_order = false;
  /// Maximum number of memoized positions.
  std::size_t state_budget = 20'000'000;
};

struct SolveResult {
  int value = 0;  // saved vertices under optimal play
  std::vector<Move> principal_variation;
  std::uint64_t nodes = 0;
  double seconds = 0.0;
};

/// Exact game values on finite graphs with at most 64 vertices. Positions are
/// keyed by (burned, protected) only, so one solver can be reused across roots.
class ExactSolver {
 public:
  using Mask = std::uint64_t;

  ExactSolver(TopologyPtr graph, Ruleset rules, SolverOptions options = {});

  SolveResult solve(VertexId root);

  /// Value of `s` with the firefighter about to protect.
  int firefighter_to_move(const GameState& s);
  /// Value of `s` with the pyro about to burn (single-source rules only).
  int pyro_to_move(const GameState& s);

  std::size_t table_size() const { return table_.size(); }
  std::uint64_t nodes() const { return nodes_; }

 private:
  struct Key {
    Mask burned;
    Mask protected_mask;
    bool pyro_turn;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  int ff_value(Mask burned, Mask prot);
  int pyro_value(Mask burned, Mask prot);
  int after_protect(Mask burned, Mask prot);
  Mask neighborhood(Mask set) const;
  Mask candidates(Mask burned, Mask prot) const;
  bool fire_can_move(Mask burned, Mask prot) const;
  std::vector<Mask> protection_moves(Mask burned, Mask prot) const;
  std::vector<int> pyro_sources(Mask burned, Mask prot) const;
  void remember(const Key& key, int value);
  std::pair<Mask, Mask> masks(const GameState& s) const;

  TopologyPtr graph_;
  Ruleset rules_;
  SolverOptions options_;
  int n_ = 0;
  Mask all_ = 0;
  std::vector<Mask> adjacency_;
  std::unordered_map<Key, std::uint8_t, KeyHash> table_;
  std::uint64_t nodes_ = 0;
};

/// Maximum saved vertices in the Pyro game with k firefighters and the fire
/// starting at `root`.
SolveResult msv_pyro(const TopologyPtr& graph, VertexId root, int k,
                     const SolverOptions& options = {});

/// Maximum saved vertices in the classic Firefighter problem.
SolveResult msv_classic(const TopologyPtr& graph, VertexId root, int k,
                        const SolverOptions& options = {});

struct PyroMoveValue {
  VertexId source;
  int value;
};

/// Minimax value of every legal burn in a pyro-to-move position.
std::vector<PyroMoveValue> pyro_move_values(const GameState& s, const SolverOptions& options = {});

/// A value-minimizing burn source, least vertex id among ties. Throws
/// IllegalMove when the fire cannot move.
VertexId best_response_pyro(const GameState& s, const SolverOptions& options = {});

/// Replays a variation from the round-0 position through the game rules and
/// returns the final state. Throws IllegalMove on an illegal step.
GameState replay_variation(const TopologyPtr& graph, Ruleset rules, VertexId root,
                           const std::vector<Move>& variation);

}  // namespace pyro
