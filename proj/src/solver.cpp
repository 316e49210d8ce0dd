#include "pyro/solver.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <limits>
#include <sstream>

namespace pyro {

namespace {

constexpr int kMaxVertices = 64;

int popcount(std::uint64_t m) { return std::popcount(m); }

std::vector<int> bits_of(std::uint64_t m) {
  std::vector<int> out;
  while (m != 0) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

}  // namespace

std::string describe(const Move& move, const Topology& topology) {
  std::ostringstream os;
  switch (move.kind) {
    case Move::Kind::protect:
      os << "protect";
      if (move.vertices.empty()) os << " -";
      for (VertexId v : move.vertices) os << ' ' << topology.name(v);
      break;
    case Move::Kind::burn:
      os << "burn " << topology.name(move.vertices.at(0));
      break;
    case Move::Kind::full_spread:
      os << "spread";
      break;
  }
  return os.str();
}

std::size_t ExactSolver::KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t h = k.burned * 0x9E3779B97F4A7C15ULL;
  h ^= (k.protected_mask + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2));
  h ^= k.pyro_turn ? 0xD6E8FEB86659FD93ULL : 0;
  h ^= h >> 31;
  return static_cast<std::size_t>(h * 0xBF58476D1CE4E5B9ULL);
}

ExactSolver::ExactSolver(TopologyPtr graph, Ruleset rules, SolverOptions options)
    : graph_(std::move(graph)), rules_(rules), options_(options) {
  if (!graph_ || graph_->is_grid()) throw std::invalid_argument("exact solver needs a finite graph");
  rules_.validate();
  if (rules_.omniscient_until != 0) {
    throw std::invalid_argument("exact solver does not support an omniscient phase");
  }
  if (graph_->size() > kMaxVertices) {
    throw BudgetExceeded("graph has " + std::to_string(graph_->size()) +
                         " vertices; the exact solver supports at most 64");
  }
  n_ = static_cast<int>(graph_->size());
  all_ = n_ == 64 ? ~Mask{0} : ((Mask{1} << n_) - 1);
  adjacency_.assign(n_, 0);
  for (int v = 0; v < n_; ++v) {
    for (VertexId w : graph_->neighbors(static_cast<VertexId>(v))) adjacency_[v] |= Mask{1} << w;
  }
}

ExactSolver::Mask ExactSolver::neighborhood(Mask set) const {
  Mask out = 0;
  for (int v : bits_of(set)) out |= adjacency_[v];
  return out;
}

bool ExactSolver::fire_can_move(Mask burned, Mask prot) const {
  return (neighborhood(burned) & ~burned & ~prot) != 0;
}

ExactSolver::Mask ExactSolver::candidates(Mask burned, Mask prot) const {
  const Mask open = all_ & ~burned & ~prot;
  if (!options_.cone_pruning) return open;
  Mask reach = 0;
  Mask frontier = neighborhood(burned) & open;
  while (frontier != 0) {
    reach |= frontier;
    frontier = neighborhood(frontier) & open & ~reach;
  }
  return reach;
}

std::vector<ExactSolver::Mask> ExactSolver::protection_moves(Mask burned, Mask prot) const {
  std::vector<int> pool = bits_of(candidates(burned, prot));
  const auto k = static_cast<std::size_t>(rules_.firefighters);
  std::vector<Mask> moves;
  if (pool.size() <= k) {
    // Protect the whole pool, topped up with unreachable open vertices so the
    // move protects min(k, open) vertices as the rules require.
    Mask all = 0;
    for (int v : pool) all |= Mask{1} << v;
    const Mask open = all_ & ~burned & ~prot;
    for (int v : bits_of(open & ~all)) {
      if (static_cast<std::size_t>(popcount(all)) >= k) break;
      all |= Mask{1} << v;
    }
    moves.push_back(all);
    return moves;
  }
  if (options_.reverse_order) std::reverse(pool.begin(), pool.end());
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    Mask m = 0;
    for (std::size_t i : idx) m |= Mask{1} << pool[i];
    moves.push_back(m);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == pool.size() - k + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return moves;
}

std::vector<int> ExactSolver::pyro_sources(Mask burned, Mask prot) const {
  const Mask open = all_ & ~burned & ~prot;
  std::vector<int> out;
  for (int v : bits_of(burned)) {
    if ((adjacency_[v] & open) != 0) out.push_back(v);
  }
  if (options_.reverse_order) std::reverse(out.begin(), out.end());
  return out;
}

void ExactSolver::remember(const Key& key, int value) {
  if (table_.size() >= options_.state_budget) {
    throw BudgetExceeded("exact search exceeded the state budget of " +
                         std::to_string(options_.state_budget) + " positions");
  }
  table_.emplace(key, static_cast<std::uint8_t>(value));
}

int ExactSolver::after_protect(Mask burned, Mask prot) {
  if (rules_.spread == Spread::single_source) return pyro_value(burned, prot);
  const Mask next = burned | (neighborhood(burned) & ~prot);
  if (next == burned) return n_ - popcount(burned);
  return ff_value(next, prot);
}

int ExactSolver::ff_value(Mask burned, Mask prot) {
  ++nodes_;
  const int upper = n_ - popcount(burned);
  if (!fire_can_move(burned, prot)) return upper;
  const Key key{burned, prot, false};
  if (auto it = table_.find(key); it != table_.end()) return it->second;
  int best = -1;
  for (Mask move : protection_moves(burned, prot)) {
    best = std::max(best, after_protect(burned, prot | move));
    if (best == upper) break;
  }
  remember(key, best);
  return best;
}

int ExactSolver::pyro_value(Mask burned, Mask prot) {
  ++nodes_;
  const int upper = n_ - popcount(burned);
  if (!fire_can_move(burned, prot)) return upper;
  const Key key{burned, prot, true};
  if (auto it = table_.find(key); it != table_.end()) return it->second;
  const Mask open = all_ & ~burned & ~prot;
  const int lower = popcount(prot);
  int best = std::numeric_limits<int>::max();
  for (int v : pyro_sources(burned, prot)) {
    best = std::min(best, ff_value(burned | (adjacency_[v] & open), prot));
    if (best == lower) break;
  }
  remember(key, best);
  return best;
}

std::pair<ExactSolver::Mask, ExactSolver::Mask> ExactSolver::masks(const GameState& s) const {
  if (s.topology().size() != graph_->size()) {
    throw std::invalid_argument("state belongs to a different graph");
  }
  Mask burned = 0;
  Mask prot = 0;
  for (VertexId v : s.burned()) burned |= Mask{1} << v;
  for (VertexId v : s.protected_vertices()) prot |= Mask{1} << v;
  return {burned, prot};
}

int ExactSolver::firefighter_to_move(const GameState& s) {
  auto [b, p] = masks(s);
  return ff_value(b, p);
}

int ExactSolver::pyro_to_move(const GameState& s) {
  if (rules_.spread != Spread::single_source) {
    throw std::invalid_argument("pyro-to-move positions exist only under single-source rules");
  }
  auto [b, p] = masks(s);
  return pyro_value(b, p);
}

SolveResult ExactSolver::solve(VertexId root) {
  if (!graph_->contains(root)) throw std::out_of_range("root not in graph");
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t nodes_before = nodes_;
  SolveResult result;
  Mask burned = Mask{1} << root;
  Mask prot = 0;
  result.value = ff_value(burned, prot);

  // Walk the principal variation: first move (in enumeration order) that
  // attains the value of its node.
  const auto to_ids = [](Mask m) {
    std::vector<VertexId> ids;
    for (int v : bits_of(m)) ids.push_back(static_cast<VertexId>(v));
    return ids;
  };
  while (fire_can_move(burned, prot)) {
    const int here = ff_value(burned, prot);
    for (Mask move : protection_moves(burned, prot)) {
      if (after_protect(burned, prot | move) == here) {
        prot |= move;
        result.principal_variation.push_back({Move::Kind::protect, to_ids(move)});
        break;
      }
    }
    if (!fire_can_move(burned, prot)) break;
    if (rules_.spread == Spread::all_sources) {
      burned |= neighborhood(burned) & ~prot;
      result.principal_variation.push_back({Move::Kind::full_spread, {}});
      continue;
    }
    const int after = pyro_value(burned, prot);
    const Mask open = all_ & ~burned & ~prot;
    for (int v : pyro_sources(burned, prot)) {
      const Mask next = burned | (adjacency_[v] & open);
      if (ff_value(next, prot) == after) {
        burned = next;
        result.principal_variation.push_back({Move::Kind::burn, {static_cast<VertexId>(v)}});
        break;
      }
    }
  }
  result.nodes = nodes_ - nodes_before;
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

SolveResult msv_pyro(const TopologyPtr& graph, VertexId root, int k, const SolverOptions& options) {
  ExactSolver solver(graph, Ruleset::pyro(k), options);
  return solver.solve(root);
}

SolveResult msv_classic(const TopologyPtr& graph, VertexId root, int k,
                        const SolverOptions& options) {
  ExactSolver solver(graph, Ruleset::classic(k), options);
  return solver.solve(root);
}

std::vector<PyroMoveValue> pyro_move_values(const GameState& s, const SolverOptions& options) {
  const auto moves = legal_pyro_moves(s);
  if (moves.empty()) throw IllegalMove("the fire has no legal move");
  Ruleset rules = s.rules();
  rules.omniscient_until = 0;
  ExactSolver solver(s.topology_ptr(), rules, options);
  std::vector<PyroMoveValue> out;
  for (VertexId v : moves) out.push_back({v, solver.firefighter_to_move(apply_burn_from(s, v))});
  return out;
}

VertexId best_response_pyro(const GameState& s, const SolverOptions& options) {
  if (s.rules().spread != Spread::single_source) {
    throw std::invalid_argument("best response is defined for the Pyro game only");
  }
  const auto values = pyro_move_values(s, options);
  auto best = std::min_element(values.begin(), values.end(),
                               [](const auto& a, const auto& b) { return a.value < b.value; });
  return best->source;
}

GameState replay_variation(const TopologyPtr& graph, Ruleset rules, VertexId root,
                           const std::vector<Move>& variation) {
  GameState s(graph, rules, root);
  for (const Move& m : variation) {
    switch (m.kind) {
      case Move::Kind::protect:
        s = apply_protect(std::move(s), m.vertices);
        break;
      case Move::Kind::burn:
        if (m.vertices.size() != 1) throw IllegalMove("burn move needs exactly one source");
        s = apply_burn_from(std::move(s), m.vertices[0]);
        break;
      case Move::Kind::full_spread:
        s = apply_full_spread(std::move(s));
        break;
    }
  }
  return s;
}

}  // namespace pyro
