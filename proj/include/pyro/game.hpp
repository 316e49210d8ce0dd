#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "pyro/topology.hpp"

namespace pyro {

enum class Spread { single_source, all_sources };

/// Rule parameters of one game. Rounds 1..omniscient_until spread from every
/// burned vertex regardless of `spread`.
struct Ruleset {
  Spread spread = Spread::single_source;
  int firefighters = 1;
  int omniscient_until = 0;

  static Ruleset pyro(int k = 1) { return {Spread::single_source, k, 0}; }
  static Ruleset classic(int k = 1) { return {Spread::all_sources, k, 0}; }

  void validate() const;
  friend bool operator==(const Ruleset&, const Ruleset&) = default;
};

/// Raised when a move violates the rules of the game.
class IllegalMove : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Cell : std::uint8_t { open, burned, defended };

/// Burned and protected sets over a topology. Values are immutable from the
/// outside; transitions below take a state by value and return the successor.
class GameState {
 public:
  /// Round-0 state: only `root` is burned.
  GameState(TopologyPtr topology, Ruleset rules, VertexId root);
  /// Arbitrary position; throws std::invalid_argument if the sets overlap.
  GameState(TopologyPtr topology, Ruleset rules, std::span<const VertexId> burned,
            std::span<const VertexId> protected_vertices, int round = 0);

  const Topology& topology() const { return *topology_; }
  const TopologyPtr& topology_ptr() const { return topology_; }
  const Ruleset& rules() const { return rules_; }
  int round() const { return round_; }

  Cell cell(VertexId v) const { return cells_.at(v); }
  bool is_burned(VertexId v) const { return cell(v) == Cell::burned; }
  bool is_protected(VertexId v) const { return cell(v) == Cell::defended; }
  bool is_open(VertexId v) const { return cell(v) == Cell::open; }
  bool has_open_neighbor(VertexId v) const;

  std::size_t burned_count() const { return burned_count_; }
  std::size_t protected_count() const { return protected_count_; }
  std::size_t open_count() const { return cells_.size() - burned_count_ - protected_count_; }

  std::vector<VertexId> burned() const;
  std::vector<VertexId> protected_vertices() const;

  /// Set when the fire spread across the edge of a finite grid window.
  bool escaped() const { return escaped_; }

  /// Whether the fire acts by full spread in the upcoming round.
  bool next_round_full_spread() const;

  friend bool operator==(const GameState& a, const GameState& b) {
    return a.topology_ == b.topology_ && a.rules_ == b.rules_ && a.round_ == b.round_ &&
           a.escaped_ == b.escaped_ && a.cells_ == b.cells_;
  }

 private:
  friend struct Transitions;

  TopologyPtr topology_;
  Ruleset rules_;
  std::vector<Cell> cells_;
  int round_ = 0;
  std::size_t burned_count_ = 0;
  std::size_t protected_count_ = 0;
  bool escaped_ = false;
};

struct FireResult {
  GameState state;
  std::vector<VertexId> newly_burned;
};

/// Burned vertices with at least one open neighbor, ascending.
std::vector<VertexId> legal_pyro_moves(const GameState& s);
bool has_legal_pyro_move(const GameState& s);

/// Protects `vertices`. Every vertex must be open, distinct, and at most k of
/// them; on finite graphs fewer than k is accepted only when fewer than k open
/// vertices remain.
GameState apply_protect(GameState s, std::span<const VertexId> vertices);

/// Single-source burn; increments the round. Throws IllegalMove unless `source`
/// is a legal pyro move.
FireResult burn_from(GameState s, VertexId source);
GameState apply_burn_from(GameState s, VertexId source);

/// Spread from every burned vertex; increments the round.
FireResult full_spread(GameState s);
GameState apply_full_spread(GameState s);

bool is_contained(const GameState& s);

/// |V| - |burned| on a finite topology once the fire is contained.
std::size_t saved_count(const GameState& s);

}  // namespace pyro
