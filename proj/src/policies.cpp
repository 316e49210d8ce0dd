#include "pyro/policies.hpp"

#include <algorithm>
#include <cstdlib>

namespace pyro {

namespace {

constexpr int kWin = 1'000'000;

std::vector<VertexId> ids_of(const GameState& s, const std::vector<Coord>& cells) {
  std::vector<VertexId> out;
  for (Coord c : cells) out.push_back(s.topology().at(c));
  return out;
}

bool open_at(const GameState& s, Coord c) {
  const auto v = s.topology().find(c);
  return v && s.is_open(*v);
}

void require_grid(const GameState& s, GridKind kind, const char* who) {
  if (!s.topology().is_grid() || s.topology().grid_kind() != kind) {
    throw std::invalid_argument(std::string(who) + " needs a " + to_string(kind) + " grid");
  }
}

}  // namespace

Alg1Policy::Alg1Policy(int radius) : sets_(boundary_sets(GridKind::cartesian, radius)) {
  sphere_sorted_ = sets_.sphere;
  std::sort(sphere_sorted_.begin(), sphere_sorted_.end());
}

std::optional<Coord> Alg1Policy::from_threat_set(const GameState& s, Coord source) const {
  const ThreatSet th = threat_set(source, sets_.radius);
  std::vector<Coord> open;
  for (Coord c : th.members) {
    if (open_at(s, c)) open.push_back(c);
  }
  if (open.empty()) return std::nullopt;
  return order_by_closeness(std::move(open), th.centers).front();
}

std::optional<Coord> Alg1Policy::fallback(const GameState& s) const {
  for (Coord c : sphere_sorted_) {
    if (open_at(s, c)) return c;
  }
  return std::nullopt;
}

std::vector<VertexId> Alg1Policy::choose(const GameState& s,
                                         const std::optional<BurnEvent>& last) const {
  require_grid(s, GridKind::cartesian, "alg1");
  const int r = sets_.radius;
  std::optional<Coord> pick;
  for (Coord c : sets_.initial_targets) {
    if (open_at(s, c)) {
      pick = c;
      break;
    }
  }
  if (!pick && last) {
    const Topology& g = s.topology();
    const Coord v = g.coord(last->source);
    const int n = g.norm(last->source);
    if (n == r - 1) {
      std::vector<Coord> inner;
      for (VertexId w : last->newly_burned) {
        if (g.norm(w) < r) inner.push_back(g.coord(w));
      }
      std::sort(inner.begin(), inner.end());
      for (Coord u : inner) {
        if ((pick = from_threat_set(s, u))) break;
      }
    } else if (n < r - 1) {
      // Sources deeper than D_{R-4} are answered like D_{R-4}..D_{R-2}.
      pick = from_threat_set(s, v);
    }
  }
  if (!pick) pick = fallback(s);
  if (!pick) return {};
  return {s.topology().at(*pick)};
}

Alg2Policy::Alg2Policy(int radius) : sets_(boundary_sets(GridKind::strong, radius)) {
  remainder_sorted_ = sets_.remainder;
  std::sort(remainder_sorted_.begin(), remainder_sorted_.end());
}

bool Alg2Policy::in_remainder(Coord c) const {
  return grid_norm(GridKind::strong, c) == sets_.radius && !in_t_strong(c, sets_.radius);
}

std::optional<GuardLine> guard_line(const Alg2Policy& policy, Coord source) {
  for (int m = 1; m <= 4; ++m) {
    for (int i : {m, -m}) {
      const Coord t{source.x, source.y + i};
      if (policy.in_remainder(t)) {
        GuardLine line{true, i, t, {}};
        for (int d = -2; d <= 2; ++d) line.cells.push_back({t.x + d, t.y});
        return line;
      }
    }
    for (int i : {m, -m}) {
      const Coord t{source.x + i, source.y};
      if (policy.in_remainder(t)) {
        GuardLine line{false, i, t, {}};
        for (int d = -2; d <= 2; ++d) line.cells.push_back({t.x, t.y + d});
        return line;
      }
    }
  }
  return std::nullopt;
}

std::vector<VertexId> Alg2Policy::choose(const GameState& s,
                                         const std::optional<BurnEvent>& last) const {
  require_grid(s, GridKind::strong, "alg2");
  const auto k = static_cast<std::size_t>(s.rules().firefighters);
  std::vector<Coord> picks;
  for (Coord c : sets_.initial_targets) {
    if (picks.size() == k) break;
    if (open_at(s, c)) picks.push_back(c);
  }
  if (picks.empty() && last) {
    const Coord source = s.topology().coord(last->source);
    if (auto line = guard_line(*this, source)) {
      std::vector<Coord> open;
      for (Coord c : line->cells) {
        if (open_at(s, c)) open.push_back(c);
      }
      open = order_by_closeness(std::move(open), {line->target});
      for (Coord c : open) {
        if (picks.size() == k) break;
        picks.push_back(c);
      }
    } else {
      // Near a corner every axis offset can land in T. Guard the D cells
      // nearest the source instead.
      std::vector<Coord> open;
      for (Coord c : remainder_sorted_) {
        if (open_at(s, c)) open.push_back(c);
      }
      std::stable_sort(open.begin(), open.end(), [&](Coord a, Coord b) {
        return grid_distance(GridKind::strong, a, source) < grid_distance(GridKind::strong, b, source);
      });
      for (Coord c : open) {
        if (picks.size() == k) break;
        picks.push_back(c);
      }
    }
  }
  for (Coord c : remainder_sorted_) {
    if (picks.size() == k) break;
    if (open_at(s, c) && std::find(picks.begin(), picks.end(), c) == picks.end()) {
      picks.push_back(c);
    }
  }
  return ids_of(s, picks);
}

int reach(const GameState& s, VertexId source) {
  int best = -1;
  for (VertexId w : s.topology().neighbors(source)) {
    if (s.is_open(w)) best = std::max(best, s.topology().norm(w));
  }
  return best;
}

VertexId GreedyPyro::choose(const GameState& s) {
  const auto moves = legal_pyro_moves(s);
  if (moves.empty()) throw IllegalMove("the fire has no legal move");
  VertexId best = moves.front();
  int best_reach = reach(s, best);
  for (VertexId v : moves) {
    const int r = reach(s, v);
    if (r > best_reach) {
      best = v;
      best_reach = r;
    }
  }
  return best;
}

VertexId RandomPyro::choose(const GameState& s) {
  const auto moves = legal_pyro_moves(s);
  if (moves.empty()) throw IllegalMove("the fire has no legal move");
  std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
  return moves[pick(rng_)];
}

MinimaxPyro::MinimaxPyro(std::shared_ptr<const FirefighterPolicy> model, int radius, int depth,
                         int breadth)
    : model_(std::move(model)), radius_(radius), depth_(depth), breadth_(breadth) {
  if (!model_) throw std::invalid_argument("minimax pyro needs a firefighter model");
  if (depth_ < 1 || breadth_ < 1) throw std::invalid_argument("minimax depth and breadth must be positive");
}

std::vector<VertexId> MinimaxPyro::ranked_sources(const GameState& s) const {
  auto moves = legal_pyro_moves(s);
  std::vector<int> r(moves.size());
  for (std::size_t i = 0; i < moves.size(); ++i) r[i] = reach(s, moves[i]);
  std::vector<std::size_t> order(moves.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return r[a] > r[b]; });
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < order.size() && static_cast<int>(out.size()) < breadth_; ++i) {
    out.push_back(moves[order[i]]);
  }
  return out;
}

MinimaxPyro::Score MinimaxPyro::search(const GameState& s, int depth, int deepest,
                                       VertexId* pick) const {
  Score best{-2, -2};
  for (VertexId c : ranked_sources(s)) {
    FireResult fired = burn_from(s, c);
    int d = deepest;
    for (VertexId w : fired.newly_burned) d = std::max(d, s.topology().norm(w));
    Score score;
    if (d >= radius_) {
      score = {kWin + depth, 0};
    } else {
      GameState next = fired.state;
      try {
        next = apply_protect(fired.state, model_->choose(fired.state, BurnEvent{c, fired.newly_burned}));
      } catch (const IllegalMove&) {
        // A faulty model is treated as passing.
      }
      const auto sources = legal_pyro_moves(next);
      if (sources.empty()) {
        score = {d, -1};
      } else if (depth == 1) {
        int left = -1;
        for (VertexId v : sources) left = std::max(left, reach(next, v));
        score = {d, left};
      } else {
        score = search(next, depth - 1, d, nullptr);
      }
    }
    if (score > best) {
      best = score;
      if (pick) *pick = c;
    }
  }
  return best;
}

VertexId MinimaxPyro::choose(const GameState& s) {
  if (!has_legal_pyro_move(s)) throw IllegalMove("the fire has no legal move");
  VertexId pick = legal_pyro_moves(s).front();
  search(s, depth_, -1, &pick);
  return pick;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t id) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(id >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

}  // namespace pyro
