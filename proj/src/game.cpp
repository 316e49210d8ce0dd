#include "pyro/game.hpp"

#include <algorithm>
#include <string>

namespace pyro {

void Ruleset::validate() const {
  if (firefighters < 1) throw std::invalid_argument("firefighters per round must be >= 1");
  if (omniscient_until < 0) throw std::invalid_argument("omniscient phase length must be >= 0");
}

GameState::GameState(TopologyPtr topology, Ruleset rules, VertexId root)
    : topology_(std::move(topology)), rules_(rules) {
  if (!topology_) throw std::invalid_argument("null topology");
  rules_.validate();
  if (!topology_->contains(root)) throw std::out_of_range("root not in topology");
  cells_.assign(topology_->size(), Cell::open);
  cells_[root] = Cell::burned;
  burned_count_ = 1;
}

GameState::GameState(TopologyPtr topology, Ruleset rules, std::span<const VertexId> burned,
                     std::span<const VertexId> protected_vertices, int round)
    : topology_(std::move(topology)), rules_(rules), round_(round) {
  if (!topology_) throw std::invalid_argument("null topology");
  rules_.validate();
  if (round < 0) throw std::invalid_argument("negative round");
  cells_.assign(topology_->size(), Cell::open);
  for (VertexId v : burned) {
    if (!topology_->contains(v)) throw std::out_of_range("burned vertex not in topology");
    if (cells_[v] == Cell::open) ++burned_count_;
    cells_[v] = Cell::burned;
  }
  for (VertexId v : protected_vertices) {
    if (!topology_->contains(v)) throw std::out_of_range("protected vertex not in topology");
    if (cells_[v] == Cell::burned) {
      throw std::invalid_argument("vertex " + std::to_string(v) + " both burned and protected");
    }
    if (cells_[v] == Cell::open) ++protected_count_;
    cells_[v] = Cell::defended;
  }
}

bool GameState::has_open_neighbor(VertexId v) const {
  for (VertexId w : topology_->neighbors(v)) {
    if (cells_[w] == Cell::open) return true;
  }
  return false;
}

std::vector<VertexId> GameState::burned() const {
  std::vector<VertexId> out;
  out.reserve(burned_count_);
  for (VertexId v = 0; v < cells_.size(); ++v) {
    if (cells_[v] == Cell::burned) out.push_back(v);
  }
  return out;
}

std::vector<VertexId> GameState::protected_vertices() const {
  std::vector<VertexId> out;
  out.reserve(protected_count_);
  for (VertexId v = 0; v < cells_.size(); ++v) {
    if (cells_[v] == Cell::defended) out.push_back(v);
  }
  return out;
}

bool GameState::next_round_full_spread() const {
  return rules_.spread == Spread::all_sources || round_ + 1 <= rules_.omniscient_until;
}

struct Transitions {
  static void protect(GameState& s, std::span<const VertexId> vertices) {
    const auto k = static_cast<std::size_t>(s.rules_.firefighters);
    if (vertices.size() > k) {
      throw IllegalMove("protecting " + std::to_string(vertices.size()) + " vertices with k=" +
                        std::to_string(k));
    }
    if (!s.topology_->is_grid() && vertices.size() < k && vertices.size() < s.open_count()) {
      throw IllegalMove("firefighter must protect min(k, open vertices) on a finite graph");
    }
    for (VertexId v : vertices) {
      if (!s.topology_->contains(v)) throw IllegalMove("protected vertex not in topology");
      if (s.cells_[v] != Cell::open) {
        throw IllegalMove("vertex " + s.topology_->name(v) + " is already " +
                          (s.cells_[v] == Cell::burned ? "burned" : "protected"));
      }
      s.cells_[v] = Cell::defended;
      ++s.protected_count_;
    }
  }

  static void ignite(GameState& s, VertexId source, std::vector<VertexId>& newly) {
    for (VertexId w : s.topology_->neighbors(source)) {
      if (s.cells_[w] == Cell::open) {
        s.cells_[w] = Cell::burned;
        newly.push_back(w);
      }
    }
    if (s.topology_->on_window_edge(source)) s.escaped_ = true;
  }

  static FireResult burn(GameState s, VertexId source) {
    if (!s.topology_->contains(source)) throw IllegalMove("burn source not in topology");
    if (s.cells_[source] != Cell::burned) {
      throw IllegalMove("burn source " + s.topology_->name(source) + " is not burned");
    }
    if (!s.has_open_neighbor(source)) {
      throw IllegalMove("burn source " + s.topology_->name(source) + " has no open neighbor");
    }
    std::vector<VertexId> newly;
    ignite(s, source, newly);
    s.burned_count_ += newly.size();
    ++s.round_;
    std::sort(newly.begin(), newly.end());
    return {std::move(s), std::move(newly)};
  }

  static FireResult spread(GameState s) {
    const std::vector<VertexId> sources = s.burned();
    std::vector<VertexId> newly;
    for (VertexId v : sources) ignite(s, v, newly);
    s.burned_count_ += newly.size();
    ++s.round_;
    std::sort(newly.begin(), newly.end());
    return {std::move(s), std::move(newly)};
  }
};

std::vector<VertexId> legal_pyro_moves(const GameState& s) {
  std::vector<VertexId> out;
  const auto n = static_cast<VertexId>(s.topology().size());
  for (VertexId v = 0; v < n; ++v) {
    if (s.is_burned(v) && s.has_open_neighbor(v)) out.push_back(v);
  }
  return out;
}

bool has_legal_pyro_move(const GameState& s) {
  const auto n = static_cast<VertexId>(s.topology().size());
  for (VertexId v = 0; v < n; ++v) {
    if (s.is_burned(v) && s.has_open_neighbor(v)) return true;
  }
  return false;
}

GameState apply_protect(GameState s, std::span<const VertexId> vertices) {
  Transitions::protect(s, vertices);
  return s;
}

FireResult burn_from(GameState s, VertexId source) {
  return Transitions::burn(std::move(s), source);
}

GameState apply_burn_from(GameState s, VertexId source) {
  return burn_from(std::move(s), source).state;
}

FireResult full_spread(GameState s) { return Transitions::spread(std::move(s)); }

GameState apply_full_spread(GameState s) { return full_spread(std::move(s)).state; }

bool is_contained(const GameState& s) { return !s.escaped() && !has_legal_pyro_move(s); }

std::size_t saved_count(const GameState& s) {
  if (s.topology().is_grid()) throw std::logic_error("saved count is undefined on a grid");
  if (!is_contained(s)) throw std::logic_error("saved count requested before containment");
  return s.topology().size() - s.burned_count();
}

}  // namespace pyro
