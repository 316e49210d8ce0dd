#include "pyro/rectangle.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "pyro/game.hpp"

namespace pyro {

namespace {

struct Box {
  int x0, x1, y0, y1;
  bool contains(Coord c) const { return c.x >= x0 && c.x <= x1 && c.y >= y0 && c.y <= y1; }
};

Box bounds(const CellSet& a, const CellSet& b) {
  Box box{0, 0, 0, 0};
  bool first = true;
  for (const CellSet* s : {&a, &b}) {
    for (Coord c : *s) {
      if (first) {
        box = {c.x, c.x, c.y, c.y};
        first = false;
      }
      box.x0 = std::min(box.x0, c.x);
      box.x1 = std::max(box.x1, c.x);
      box.y0 = std::min(box.y0, c.y);
      box.y1 = std::max(box.y1, c.y);
    }
  }
  return box;
}

std::vector<Coord> perimeter(int left, int right, int bottom, int top) {
  std::vector<Coord> out;
  for (int x = left; x <= right; ++x) {
    for (int y = bottom; y <= top; ++y) {
      if (x == left || x == right || y == bottom || y == top) out.push_back({x, y});
    }
  }
  return out;
}

}  // namespace

bool RectangleParams::normalized() const {
  return k1 >= 0 && l1 >= 0 && k2 >= 0 && l2 >= 0 && k2 >= k1 && l2 >= l1 && l1 >= k1;
}

std::string InfeasibilityWitness::inequality() const {
  std::ostringstream os;
  os << (which == Case::short_top ? "3*l1+k1+1" : "4*k2+2") << " = " << required
     << (infeasible ? " > " : " <= ") << capacity << " = f*" << step;
  return os.str();
}

InfeasibilityWitness rectangle_infeasible(const RectangleParams& p, int f) {
  if (!p.normalized()) throw std::invalid_argument("rectangle parameters are not normalized");
  if (f < 1) throw std::invalid_argument("need at least one protection per step");
  InfeasibilityWitness w;
  if (p.l1 <= p.k2) {
    // By step l1: 2*l1+1 cells in column x = k1 (rows -l1..l1) and
    // k1 + min(l1, k2) = k1 + l1 more in row y = l1.
    w.which = InfeasibilityWitness::Case::short_top;
    w.step = p.l1;
    w.required = 3LL * p.l1 + p.k1 + 1;
  } else {
    // By step k2: 2*k2+1 cells in each of the columns x = -k2 and x = k1.
    w.which = InfeasibilityWitness::Case::narrow;
    w.step = p.k2;
    w.required = 4LL * p.k2 + 2;
  }
  w.capacity = static_cast<long long>(f) * w.step;
  w.infeasible = w.required > w.capacity;
  return w;
}

std::optional<CellSet> flood_region(const CellSet& burned, const CellSet& barrier, int window) {
  Box box = bounds(burned, barrier);
  box = {box.x0 - window, box.x1 + window, box.y0 - window, box.y1 + window};
  CellSet seen;
  std::deque<Coord> queue;
  for (Coord c : burned) {
    if (!barrier.count(c) && seen.insert(c).second) queue.push_back(c);
  }
  while (!queue.empty()) {
    const Coord c = queue.front();
    queue.pop_front();
    if (c.x == box.x0 || c.x == box.x1 || c.y == box.y0 || c.y == box.y1) return std::nullopt;
    for (Coord step : grid_steps(GridKind::strong)) {
      const Coord n = c + step;
      if (!barrier.count(n) && seen.insert(n).second) queue.push_back(n);
    }
  }
  return seen;
}

bool is_rectangle_perimeter(const CellSet& cells) {
  if (cells.empty()) return false;
  const Box b = bounds(cells, {});
  if (b.x1 - b.x0 < 2 || b.y1 - b.y0 < 2) return false;
  const auto ring = perimeter(b.x0, b.x1, b.y0, b.y1);
  return ring.size() == cells.size() &&
         std::all_of(ring.begin(), ring.end(), [&](Coord c) { return cells.count(c) > 0; });
}

std::optional<RectangleParams> rectangle_of(const CellSet& cells) {
  if (!is_rectangle_perimeter(cells)) return std::nullopt;
  const Box b = bounds(cells, {});
  if (b.x0 >= 0 || b.x1 <= 0 || b.y0 >= 0 || b.y1 <= 0) return std::nullopt;
  return RectangleParams{b.x1, b.y1, -b.x0, -b.y0};
}

CellSet redundant_cells(const CellSet& protected_set, const CellSet& region) {
  CellSet out;
  for (Coord c : protected_set) {
    bool needed = false;
    for (Coord step : grid_steps(GridKind::strong)) {
      const Coord n = c + step;
      if (!protected_set.count(n) && !region.count(n)) needed = true;
    }
    if (!needed) out.insert(c);
  }
  return out;
}

PopResult pop_corners(const CellSet& protected_set, const CellSet& burned, bool prune) {
  for (Coord c : burned) {
    if (protected_set.count(c)) throw std::invalid_argument("protected set overlaps the burned set");
  }
  PopResult result;
  result.protected_set = protected_set;
  auto region = flood_region(burned, protected_set);
  if (!region) throw std::invalid_argument("protected set does not contain the fire");
  result.region = std::move(*region);
  const auto prune_now = [&] {
    if (!prune) return;
    const CellSet spare = redundant_cells(result.protected_set, result.region);
    if (spare.empty()) return;
    for (Coord c : spare) result.protected_set.erase(c);
    result.pruned += static_cast<int>(spare.size());
    result.region = *flood_region(burned, result.protected_set);
  };
  prune_now();

  const std::size_t cap = 16 * protected_set.size() * protected_set.size() + 64;
  const auto settled = [&](Coord c) {
    return result.region.count(c) > 0 || result.protected_set.count(c) > 0;
  };
  while (true) {
    bool popped = false;
    for (Coord c : result.protected_set) {
      for (int dx : {1, -1}) {
        for (int dy : {1, -1}) {
          const Coord side{c.x + dx, c.y};
          const Coord up{c.x, c.y + dy};
          const Coord diag{c.x + dx, c.y + dy};
          if (!result.protected_set.count(side) || !result.protected_set.count(up)) continue;
          if (settled(diag)) continue;
          bool guarded = true;
          for (Coord step : grid_steps(GridKind::strong)) {
            const Coord n = c + step;
            if (n != diag && !settled(n)) guarded = false;
          }
          if (!guarded) continue;
          result.protected_set.erase(c);
          result.protected_set.insert(diag);
          popped = true;
          break;
        }
        if (popped) break;
      }
      if (popped) break;
    }
    if (!popped) break;
    if (static_cast<std::size_t>(++result.pops) > cap) {
      throw std::runtime_error("corner popping did not reach a fixpoint");
    }
    region = flood_region(burned, result.protected_set);
    if (!region) throw std::runtime_error("corner popping broke containment");
    result.region = std::move(*region);
    prune_now();
  }
  return result;
}

ContainingCurve random_containing_curve(std::mt19937_64& rng, int radius, CurveShape shape) {
  if (radius < 0) throw std::invalid_argument("radius must be non-negative");
  ContainingCurve out;
  std::vector<Coord> cells{{0, 0}};
  out.burned.insert({0, 0});
  const auto steps = grid_steps(GridKind::strong);
  std::uniform_int_distribution<int> grow(0, 3 * (radius + 1) * (radius + 1));
  std::uniform_int_distribution<std::size_t> dir(0, steps.size() - 1);
  for (int i = grow(rng); i > 0; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, cells.size() - 1);
    const Coord c = cells[pick(rng)] + steps[dir(rng)];
    if (grid_norm(GridKind::strong, c) <= radius && out.burned.insert(c).second) cells.push_back(c);
  }

  const int w = radius + 2;
  if (shape == CurveShape::minimum) {
    // Fill every row and column between its extreme burned cells.
    bool grew = true;
    while (grew) {
      grew = false;
      for (int line = -w; line <= w; ++line) {
        for (bool row : {true, false}) {
          int lo = w + 1;
          int hi = -w - 1;
          for (int i = -w; i <= w; ++i) {
            if (out.burned.count(row ? Coord{i, line} : Coord{line, i})) {
              lo = std::min(lo, i);
              hi = std::max(hi, i);
            }
          }
          for (int i = lo; i <= hi; ++i) {
            grew = out.burned.insert(row ? Coord{i, line} : Coord{line, i}).second || grew;
          }
        }
      }
    }
  }

  // Cells 4-connected to the far outside stay saved; the rest are filled in.
  CellSet outside;
  std::deque<Coord> queue{{-w, -w}};
  outside.insert({-w, -w});
  while (!queue.empty()) {
    const Coord c = queue.front();
    queue.pop_front();
    for (Coord step : grid_steps(GridKind::cartesian)) {
      const Coord n = c + step;
      if (std::abs(n.x) > w || std::abs(n.y) > w) continue;
      if (!out.burned.count(n) && outside.insert(n).second) queue.push_back(n);
    }
  }
  for (int x = -w; x <= w; ++x) {
    for (int y = -w; y <= w; ++y) {
      if (!outside.count({x, y})) out.burned.insert({x, y});
    }
  }
  for (Coord c : out.burned) {
    for (Coord step : steps) {
      if (outside.count(c + step)) out.protected_set.insert(c + step);
    }
  }
  // Drop protections with no saved unprotected neighbour; the fire takes them.
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = out.protected_set.begin(); it != out.protected_set.end();) {
      bool needed = false;
      for (Coord step : steps) {
        const Coord n = *it + step;
        if (!out.burned.count(n) && !out.protected_set.count(n)) needed = true;
      }
      if (needed) {
        ++it;
      } else {
        out.burned.insert(*it);
        it = out.protected_set.erase(it);
        changed = true;
      }
    }
  }
  return out;
}

std::size_t BoxSchedule::protections() const {
  std::size_t n = 0;
  for (const auto& r : rounds) n += r.size();
  return n;
}

std::optional<BoxSchedule> search_box_schedule(int f, int max_round, int max_extent) {
  if (f < 1 || max_round < 1 || max_extent < 1) throw std::invalid_argument("bad box search bounds");
  std::optional<BoxSchedule> best;
  std::tuple<std::size_t, int, int, int, int, int> best_key{};
  for (int left = 1; left <= max_extent; ++left) {
    for (int right = 1; right <= max_extent; ++right) {
      for (int bottom = 1; bottom <= max_extent; ++bottom) {
        for (int top = 1; top <= max_extent; ++top) {
          auto cells = perimeter(-left, right, -bottom, top);
          std::sort(cells.begin(), cells.end(), [](Coord a, Coord b) {
            const int na = grid_norm(GridKind::strong, a);
            const int nb = grid_norm(GridKind::strong, b);
            return na != nb ? na < nb : a < b;
          });
          bool ok = true;
          int last = 0;
          for (std::size_t i = 0; i < cells.size() && ok; ++i) {
            const int round = static_cast<int>(i) / f + 1;
            ok = round <= grid_norm(GridKind::strong, cells[i]) && round <= max_round;
            last = round;
          }
          if (!ok) continue;
          const auto key = std::make_tuple(cells.size(), last, left, right, bottom, top);
          if (best && !(key < best_key)) continue;
          BoxSchedule s;
          s.rectangle = {right, top, left, bottom};
          s.rounds.assign(static_cast<std::size_t>(last), {});
          for (std::size_t i = 0; i < cells.size(); ++i) s.rounds[i / f].push_back(cells[i]);
          best = std::move(s);
          best_key = key;
        }
      }
    }
  }
  return best;
}

const BoxSchedule& box_strategy_4ff() {
  static const BoxSchedule schedule{
      {8, 5, 1, 2},
      {
          {{-1, -1}, {-1, 0}, {-1, 1}, {-1, -2}},
          {{-1, 2}, {0, -2}, {1, -2}, {2, -2}},
          {{-1, 3}, {3, -2}, {-1, 4}, {4, -2}},
          {{-1, 5}, {0, 5}, {1, 5}, {2, 5}},
          {{3, 5}, {4, 5}, {5, -2}, {5, 5}},
          {{6, -2}, {6, 5}, {7, -2}, {7, 5}},
          {{8, -2}, {8, -1}, {8, 0}, {8, 1}},
          {{8, 2}, {8, 3}, {8, 4}, {8, 5}},
      }};
  return schedule;
}

BoxSimulation simulate_box(const BoxSchedule& schedule, int firefighters, int max_rounds) {
  int extent = 2;
  for (const auto& r : schedule.rounds) {
    for (Coord c : r) extent = std::max(extent, grid_norm(GridKind::strong, c) + 2);
  }
  auto topology = std::make_shared<const Topology>(Topology::grid(GridKind::strong, extent));
  GameState s(topology, Ruleset::classic(firefighters), topology->at({0, 0}));
  BoxSimulation sim;
  for (int t = 1; t <= max_rounds; ++t) {
    sim.round = t;
    std::vector<VertexId> ids;
    if (static_cast<std::size_t>(t) <= schedule.rounds.size()) {
      for (Coord c : schedule.rounds[t - 1]) ids.push_back(topology->at(c));
    }
    try {
      s = apply_protect(std::move(s), ids);
    } catch (const IllegalMove& e) {
      sim.failure = "round " + std::to_string(t) + ": " + e.what();
      break;
    }
    if (!has_legal_pyro_move(s)) {
      sim.contained = true;
      break;
    }
    s = apply_full_spread(std::move(s));
    if (s.escaped()) break;
  }
  sim.protections = s.protected_count();
  sim.burned = s.burned_count();
  return sim;
}

}  // namespace pyro
