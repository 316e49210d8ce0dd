#include <doctest.h>

#include <algorithm>
#include <memory>
#include <random>
#include <set>

#include "pyro/game.hpp"

using namespace pyro;

namespace {

using Edges = std::vector<std::pair<VertexId, VertexId>>;

TopologyPtr finite(std::size_t n, const Edges& e) { return std::make_shared<const Topology>(Topology::finite(n, e)); }
TopologyPtr path(int n) {
  Edges e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return finite(n, e);
}
TopologyPtr grid(GridKind kind, int w) { return std::make_shared<const Topology>(Topology::grid(kind, w)); }

std::set<Coord> burned_coords(const GameState& s) {
  std::set<Coord> out;
  for (VertexId v : s.burned()) out.insert(s.topology().coord(v));
  return out;
}

}  // namespace

TEST_CASE("legal pyro moves") {
  const auto p3 = path(3);
  const VertexId a = 0, b = 1, c = 2;
  const VertexId burned[] = {b};
  const VertexId left[] = {a};
  const VertexId both[] = {a, c};
  CHECK(legal_pyro_moves(GameState(p3, Ruleset::pyro(), burned, left)) == std::vector<VertexId>{b});
  const GameState closed(p3, Ruleset::pyro(), burned, both);
  CHECK(legal_pyro_moves(closed).empty());
  CHECK(is_contained(closed));
  CHECK(saved_count(closed) == 2);
  const auto g = grid(GridKind::cartesian, 3);
  const GameState start(g, Ruleset::pyro(), g->at({0, 0}));
  CHECK(legal_pyro_moves(start) == std::vector<VertexId>{g->at({0, 0})});
  CHECK_FALSE(is_contained(start));
}

TEST_CASE("protect rules") {
  const Edges star{{0, 1}, {0, 2}, {0, 3}};
  const auto g = finite(4, star);
  const GameState s(g, Ruleset::pyro(1), 0);
  const VertexId one[] = {1};
  CHECK(apply_protect(s, one).is_protected(1));
  const VertexId root[] = {0};
  CHECK_THROWS_AS(apply_protect(s, root), IllegalMove);
  const VertexId two[] = {1, 2};
  CHECK_THROWS_AS(apply_protect(s, two), IllegalMove);
  const GameState again = apply_protect(s, one);
  CHECK_THROWS_AS(apply_protect(again, one), IllegalMove);

  // k = 2 with a single open vertex left: protecting it alone is legal.
  const VertexId burned[] = {0, 1, 2};
  const GameState last(g, Ruleset::pyro(2), burned, {});
  const VertexId only[] = {3};
  CHECK(apply_protect(last, only).is_protected(3));
  // With two open vertices, protecting one of them is not.
  const VertexId fewer[] = {0, 1};
  const GameState two_open(g, Ruleset::pyro(2), fewer, {});
  CHECK_THROWS_AS(apply_protect(two_open, only), IllegalMove);
}

TEST_CASE("burn from a source") {
  const Edges star{{0, 1}, {0, 2}, {0, 3}, {0, 4}};
  const auto g = finite(5, star);
  const auto r = burn_from(GameState(g, Ruleset::pyro(), 0), 0);
  CHECK(r.state.burned_count() == 5);
  CHECK(r.state.round() == 1);
  CHECK(r.newly_burned == std::vector<VertexId>{1, 2, 3, 4});

  const auto c = grid(GridKind::cartesian, 3);
  const VertexId o[] = {c->at({0, 0})};
  const VertexId up[] = {c->at({0, 1})};
  const GameState s(c, Ruleset::pyro(), o, up);
  CHECK(burned_coords(apply_burn_from(s, o[0])) == std::set<Coord>{{0, 0}, {1, 0}, {-1, 0}, {0, -1}});

  const VertexId all[] = {1, 2, 3, 4};
  const VertexId centre[] = {0};
  const GameState stuck(g, Ruleset::pyro(), centre, all);
  CHECK_THROWS_AS(burn_from(stuck, 0), IllegalMove);
  CHECK_THROWS_AS(burn_from(GameState(g, Ruleset::pyro(), 0), 1), IllegalMove);
}

TEST_CASE("full spread grows metric balls") {
  for (GridKind kind : {GridKind::cartesian, GridKind::strong}) {
    const auto g = grid(kind, 8);
    GameState s(g, Ruleset::classic(), g->at({0, 0}));
    for (int t = 1; t <= 6; ++t) {
      s = apply_full_spread(s);
      const std::size_t expect = kind == GridKind::cartesian ? 2 * t * t + 2 * t + 1 : (2 * t + 1) * (2 * t + 1);
      CHECK(s.burned_count() == expect);
      for (VertexId v : s.burned()) CHECK(g->norm(v) <= t);
    }
  }
}

TEST_CASE("full spread equals the union of burned neighbourhoods") {
  std::mt19937_64 rng(5);
  const auto g = grid(GridKind::strong, 6);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(g->size()) - 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::set<VertexId> burned, prot;
    for (int i = 0; i < 10; ++i) burned.insert(pick(rng));
    for (int i = 0; i < 20; ++i) {
      const VertexId v = pick(rng);
      if (!burned.count(v)) prot.insert(v);
    }
    const std::vector<VertexId> b(burned.begin(), burned.end()), p(prot.begin(), prot.end());
    const GameState s(g, Ruleset::classic(), b, p);
    std::set<VertexId> expect = burned;
    for (VertexId v : burned) {
      for (VertexId w : g->neighbors(v)) {
        if (!prot.count(w)) expect.insert(w);
      }
    }
    const GameState next = apply_full_spread(s);
    const auto got = next.burned();
    REQUIRE(std::set<VertexId>(got.begin(), got.end()) == expect);
    // monotone and disjoint
    for (VertexId v : p) CHECK(next.is_protected(v));
  }
}

TEST_CASE("saved count and containment") {
  const auto p5 = path(5);
  const VertexId burned[] = {0, 1};
  const VertexId guard[] = {2};
  const GameState s(p5, Ruleset::pyro(), burned, guard);
  CHECK(saved_count(s) == 3);

  const Edges k4{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  const VertexId three[] = {0, 1, 2};
  const VertexId last[] = {3};
  CHECK(saved_count(GameState(finite(4, k4), Ruleset::pyro(), three, last)) == 1);
  CHECK_THROWS(saved_count(GameState(p5, Ruleset::pyro(), 0)));
}

TEST_CASE("protected ring around a burned ball is contained") {
  const auto g = grid(GridKind::strong, 6);
  std::vector<VertexId> burned, prot;
  for (int x = -3; x <= 3; ++x) {
    for (int y = -3; y <= 3; ++y) {
      const int n = std::max(std::abs(x), std::abs(y));
      if (n <= 2) burned.push_back(g->at({x, y}));
      if (n == 3) prot.push_back(g->at({x, y}));
    }
  }
  const GameState s(g, Ruleset::classic(), burned, prot);
  CHECK(is_contained(s));
  // flood fill from the ring avoiding the wall stays inside the wall
  std::set<VertexId> seen(burned.begin(), burned.end());
  std::vector<VertexId> stack = burned;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (VertexId w : g->neighbors(v)) {
      if (!s.is_protected(w) && seen.insert(w).second) stack.push_back(w);
    }
  }
  for (VertexId v : seen) CHECK(g->norm(v) <= 2);
}

TEST_CASE("omniscient rounds use full spread") {
  const auto g = grid(GridKind::cartesian, 6);
  GameState s(g, Ruleset{Spread::single_source, 1, 2}, g->at({0, 0}));
  CHECK(s.next_round_full_spread());
  s = apply_full_spread(apply_full_spread(s));
  CHECK_FALSE(s.next_round_full_spread());
}
