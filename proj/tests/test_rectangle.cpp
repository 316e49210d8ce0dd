#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>

#include "pyro/rectangle.hpp"

using namespace pyro;

namespace {

// 8-neighbour flood from `burned` avoiding `wall`; false if it leaves the
// bounding box of both sets grown by two.
bool separates(const CellSet& burned, const CellSet& wall) {
  int lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  for (const CellSet* s : {&burned, &wall}) {
    for (Coord c : *s) {
      lo_x = std::min(lo_x, c.x);
      hi_x = std::max(hi_x, c.x);
      lo_y = std::min(lo_y, c.y);
      hi_y = std::max(hi_y, c.y);
    }
  }
  std::set<Coord> seen(burned.begin(), burned.end());
  std::vector<Coord> stack(burned.begin(), burned.end());
  while (!stack.empty()) {
    const Coord c = stack.back();
    stack.pop_back();
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        const Coord n{c.x + dx, c.y + dy};
        if (wall.count(n) || !seen.insert(n).second) continue;
        if (n.x < lo_x - 2 || n.x > hi_x + 2 || n.y < lo_y - 2 || n.y > hi_y + 2) return false;
        stack.push_back(n);
      }
    }
  }
  return true;
}

bool rectangle_perimeter(const CellSet& s) {
  if (s.empty()) return false;
  int lo_x = s.begin()->x, hi_x = lo_x, lo_y = s.begin()->y, hi_y = lo_y;
  for (Coord c : s) {
    lo_x = std::min(lo_x, c.x);
    hi_x = std::max(hi_x, c.x);
    lo_y = std::min(lo_y, c.y);
    hi_y = std::max(hi_y, c.y);
  }
  CellSet ring;
  for (int x = lo_x; x <= hi_x; ++x) {
    for (int y = lo_y; y <= hi_y; ++y) {
      if (x == lo_x || x == hi_x || y == lo_y || y == hi_y) ring.insert({x, y});
    }
  }
  return ring == s;
}

CellSet ring(int x0, int x1, int y0, int y1) {
  CellSet s;
  for (int x = x0; x <= x1; ++x) {
    for (int y = y0; y <= y1; ++y) {
      if (x == x0 || x == x1 || y == y0 || y == y1) s.insert({x, y});
    }
  }
  return s;
}

// Classic spread on the strong grid against a schedule; true when the fire
// has no move by the end of round `by`.
bool contained_by(const std::vector<std::vector<Coord>>& rounds, int by) {
  std::set<Coord> burned{{0, 0}}, prot;
  for (int t = 1; t <= by; ++t) {
    if (t <= static_cast<int>(rounds.size())) {
      for (Coord c : rounds[t - 1]) {
        if (burned.count(c) || prot.count(c)) return false;
        prot.insert(c);
      }
    }
    std::set<Coord> next = burned;
    for (Coord c : burned) {
      for (int dx = -1; dx <= 1; ++dx)
        for (int dy = -1; dy <= 1; ++dy) {
          const Coord n{c.x + dx, c.y + dy};
          if (!prot.count(n)) next.insert(n);
        }
    }
    if (next == burned) return true;
    burned = next;
  }
  for (Coord c : burned) {
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy) {
        const Coord n{c.x + dx, c.y + dy};
        if (!prot.count(n) && !burned.count(n)) return false;
      }
  }
  return true;
}

}  // namespace

TEST_CASE("infeasibility examples") {
  const auto a = rectangle_infeasible({2, 3, 5, 6}, 3);
  CHECK(a.infeasible);
  CHECK(a.which == InfeasibilityWitness::Case::short_top);
  CHECK(a.required == 12);
  CHECK(a.capacity == 9);
  const auto b = rectangle_infeasible({3, 5, 4, 6}, 3);
  CHECK(b.infeasible);
  CHECK(b.which == InfeasibilityWitness::Case::narrow);
  CHECK(b.required == 18);
  CHECK(b.capacity == 12);
  const auto c = rectangle_infeasible({2, 3, 5, 6}, 4);
  CHECK_FALSE(c.infeasible);
  CHECK(c.inequality().find("12 <= 12") != std::string::npos);
  CHECK_THROWS_AS(rectangle_infeasible({5, 3, 5, 6}, 3), std::invalid_argument);
  CHECK_THROWS_AS(rectangle_infeasible({1, 3, 0, 6}, 3), std::invalid_argument);
}

TEST_CASE("three protections per step never build a rectangle") {
  long long tuples = 0;
  bool some_survive_at_four = false;
  for (int k1 = 0; k1 <= 50; ++k1)
    for (int l1 = k1; l1 <= 50; ++l1)
      for (int k2 = k1; k2 <= 50; ++k2)
        for (int l2 = l1; l2 <= 50; ++l2) {
          ++tuples;
          const RectangleParams p{k1, l1, k2, l2};
          // independent restatement of the two counting cases
          const long long need = l1 <= k2 ? 3LL * l1 + k1 + 1 : 4LL * k2 + 2;
          const long long step = l1 <= k2 ? l1 : k2;
          REQUIRE(rectangle_infeasible(p, 3).infeasible);
          REQUIRE(rectangle_infeasible(p, 3).required == need);
          const bool four = need > 4 * step;
          CHECK(rectangle_infeasible(p, 4).infeasible == four);
          some_survive_at_four = some_survive_at_four || !four;
        }
  CHECK(tuples > 0);
  CHECK(some_survive_at_four);
}

TEST_CASE("rectangle helpers") {
  CHECK(is_rectangle_perimeter(ring(-1, 2, -1, 2)));
  CHECK(rectangle_of(ring(-2, 3, -1, 4)) == RectangleParams{3, 4, 2, 1});
  CellSet notch = ring(-1, 2, -1, 2);
  notch.erase({2, 2});
  CHECK_FALSE(is_rectangle_perimeter(notch));
  CHECK_FALSE(flood_region({{0, 0}}, notch).has_value());
  CHECK(flood_region({{0, 0}}, ring(-1, 1, -1, 1))->size() == 1);
}

TEST_CASE("popping an L-shaped corner") {
  const CellSet burned{{0, 0}, {1, 0}, {0, 1}};
  CellSet wall;
  for (Coord b : burned)
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy) {
        const Coord n{b.x + dx, b.y + dy};
        if (!burned.count(n)) wall.insert(n);
      }
  REQUIRE(wall.count({1, 1}));
  REQUIRE_FALSE(wall.count({2, 2}));
  const PopResult r = pop_corners(wall, burned);
  CHECK(r.pops == 1);
  CHECK(r.protected_set == ring(-1, 2, -1, 2));
  CHECK(r.protected_set.size() == wall.size());
  CHECK(r.region.count({1, 1}));
}

TEST_CASE("a rectangle perimeter is a fixpoint") {
  const CellSet wall = ring(-2, 3, -1, 1);
  const PopResult r = pop_corners(wall, {{0, 0}});
  CHECK(r.pops == 0);
  CHECK(r.protected_set == wall);
  CHECK_THROWS_AS(pop_corners(wall, {{3, 1}}), std::invalid_argument);
  CellSet leaky = wall;
  leaky.erase({3, 0});
  CHECK_THROWS_AS(pop_corners(leaky, {{0, 0}}), std::invalid_argument);
}

TEST_CASE("minimum containing curves pop to rectangles") {
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 300; ++i) {
    const auto curve = random_containing_curve(rng, 1 + i % 4);
    REQUIRE(separates(curve.burned, curve.protected_set));
    const PopResult r = pop_corners(curve.protected_set, curve.burned);
    CHECK(rectangle_perimeter(r.protected_set));
    CHECK(r.protected_set.size() == curve.protected_set.size());
    CHECK(separates(curve.burned, r.protected_set));
    for (Coord b : curve.burned) CHECK_FALSE(r.protected_set.count(b));
  }
}

TEST_CASE("dented curves pop to rectangles once redundant cells are pruned") {
  std::mt19937_64 rng(77);
  int dented = 0;
  for (int i = 0; i < 300; ++i) {
    const auto curve = random_containing_curve(rng, 1 + i % 4, CurveShape::dented);
    REQUIRE(separates(curve.burned, curve.protected_set));
    const PopResult plain = pop_corners(curve.protected_set, curve.burned);
    CHECK(plain.protected_set.size() == curve.protected_set.size());
    CHECK(separates(curve.burned, plain.protected_set));
    if (!rectangle_perimeter(plain.protected_set)) ++dented;
    const PopResult r = pop_corners(curve.protected_set, curve.burned, true);
    CHECK(rectangle_perimeter(r.protected_set));
    CHECK(r.protected_set.size() + r.pruned == curve.protected_set.size());
    CHECK(separates(curve.burned, r.protected_set));
  }
  // the plain rewrite does get stuck on some dents
  CHECK(dented > 0);
}

TEST_CASE("four-firefighter box schedule") {
  const BoxSchedule& s = box_strategy_4ff();
  CHECK(s.rounds.size() == 8);
  CHECK(s.protections() == 32);
  CellSet cells;
  for (const auto& r : s.rounds) {
    CHECK(r.size() <= 4);
    cells.insert(r.begin(), r.end());
  }
  CHECK(cells.size() == 32);
  CHECK(rectangle_perimeter(cells));
  CHECK(contained_by(s.rounds, 8));

  const BoxSimulation sim = simulate_box(s);
  CHECK(sim.contained);
  CHECK(sim.round <= 8);
  CHECK(sim.protections <= 32);
  CHECK(sim.failure.empty());

  // every protection is placed ahead of the fire
  for (std::size_t t = 0; t < s.rounds.size(); ++t) {
    for (Coord c : s.rounds[t]) CHECK(grid_norm(GridKind::strong, c) >= static_cast<int>(t + 1));
  }

  // dropping any single protection lets the fire out
  for (std::size_t t = 0; t < s.rounds.size(); ++t) {
    for (std::size_t i = 0; i < s.rounds[t].size(); ++i) {
      auto fewer = s.rounds;
      fewer[t].erase(fewer[t].begin() + static_cast<std::ptrdiff_t>(i));
      CHECK_FALSE(contained_by(fewer, 8));
      BoxSchedule b = s;
      b.rounds = fewer;
      CHECK_FALSE(simulate_box(b, 4, 8).contained);
    }
  }

  CHECK(search_box_schedule(4, 8) == s);
  CHECK_FALSE(search_box_schedule(3, 12, 10).has_value());
}
