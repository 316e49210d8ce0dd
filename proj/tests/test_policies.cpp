#include <doctest.h>

#include <algorithm>
#include <memory>
#include <set>

#include "pyro/policies.hpp"

using namespace pyro;

namespace {

TopologyPtr window(GridKind kind, int r) { return std::make_shared<const Topology>(Topology::grid(kind, r + 2)); }

std::set<Coord> coords(const Topology& g, const std::vector<VertexId>& ids) {
  std::set<Coord> out;
  for (VertexId v : ids) out.insert(g.coord(v));
  return out;
}

// Burned ball of the given radius, T protected, plus extra burned cells.
GameState after_t_phase(const TopologyPtr& g, int k, int ball, const std::vector<Coord>& extra = {}) {
  const GridKind kind = g->grid_kind();
  std::vector<VertexId> burned, prot;
  for (VertexId v = 0; v < g->size(); ++v) {
    if (g->norm(v) <= ball) burned.push_back(v);
  }
  for (Coord c : extra) burned.push_back(g->at(c));
  const int r = g->window_radius() - 2;
  for (Coord c : kind == GridKind::cartesian ? t_set_cartesian(r) : t_set_strong(r)) prot.push_back(g->at(c));
  std::sort(burned.begin(), burned.end());
  burned.erase(std::unique(burned.begin(), burned.end()), burned.end());
  return GameState(g, Ruleset{Spread::single_source, k, 0}, burned, prot, 100);
}

BurnEvent event(const Topology& g, Coord source, const std::vector<Coord>& lit = {}) {
  BurnEvent e{g.at(source), {}};
  for (Coord c : lit) e.newly_burned.push_back(g.at(c));
  return e;
}

}  // namespace

TEST_CASE("alg1 starts with T in clockwise order") {
  const auto g = window(GridKind::cartesian, 48);
  const Alg1Policy alg1;
  const GameState s(g, Ruleset{Spread::single_source, 1, 44}, g->at({0, 0}));
  CHECK(coords(*g, alg1.choose(s, std::nullopt)) == std::set<Coord>{{0, 48}});
  const VertexId first[] = {g->at({0, 48})};
  const GameState next = apply_protect(s, first);
  CHECK(coords(*g, alg1.choose(next, std::nullopt)) == std::set<Coord>{{1, 47}});
}

TEST_CASE("alg1 answers a burn from distance 46 at the threat-set center") {
  const auto g = window(GridKind::cartesian, 48);
  const Alg1Policy alg1;
  const Coord v{20, 26};
  const GameState s = after_t_phase(g, 1, 44, {{20, 25}, v});
  CHECK(threat_set(v).members == std::vector<Coord>{{20, 28}, {21, 27}, {22, 26}});
  CHECK(coords(*g, alg1.choose(s, event(*g, v))) == std::set<Coord>{{21, 27}});

  // With the whole threat set protected the policy falls back to the least
  // open sphere vertex.
  std::vector<VertexId> prot = s.protected_vertices();
  for (Coord c : threat_set(v).members) prot.push_back(g->at(c));
  const GameState guarded(g, s.rules(), s.burned(), prot, 100);
  const auto pick = alg1.choose(guarded, event(*g, v));
  Coord least{1000, 1000};
  for (Coord c : sphere(GridKind::cartesian, 48)) {
    if (guarded.is_open(g->at(c))) least = std::min(least, c);
  }
  CHECK(coords(*g, pick) == std::set<Coord>{least});
}

TEST_CASE("alg1 rule for a source one step inside the sphere") {
  const auto g = window(GridKind::cartesian, 48);
  const Alg1Policy alg1;
  // burn from (20,27) lights (21,27) at 48 and (20,28) at 48 plus (19,27)
  const Coord src{20, 27};
  const GameState s = after_t_phase(g, 1, 44, {{20, 25}, {20, 26}, src, {19, 27}, {21, 27}, {20, 28}});
  const auto pick = alg1.choose(s, event(*g, src, {{19, 27}, {20, 28}, {21, 27}}));
  // the only inner newly burned neighbour is (19,27); its threat set is
  // {(19,29),(20,28),(21,27)}... minus burned cells
  const ThreatSet th = threat_set({19, 27});
  std::vector<Coord> open;
  for (Coord c : th.members) {
    if (s.is_open(g->at(c))) open.push_back(c);
  }
  REQUIRE_FALSE(open.empty());
  CHECK(coords(*g, pick) == std::set<Coord>{order_by_closeness(open, th.centers).front()});
}

TEST_CASE("alg1 never picks a burned or protected vertex") {
  const auto g = window(GridKind::cartesian, 48);
  const Alg1Policy alg1;
  const GameState s = after_t_phase(g, 1, 46);
  for (Coord src : {Coord{10, 36}, Coord{-30, 16}, Coord{0, -46}, Coord{46, 0}}) {
    const auto pick = alg1.choose(s, event(*g, src));
    REQUIRE(pick.size() == 1);
    CHECK(s.is_open(pick[0]));
    CHECK(g->norm(pick[0]) == 48);
  }
}

TEST_CASE("alg2 protects T two at a time") {
  const auto g = window(GridKind::strong, 29);
  const Alg2Policy alg2;
  GameState s(g, Ruleset{Spread::single_source, 2, 25}, g->at({0, 0}));
  std::set<Coord> seen;
  for (int round = 1; round <= 26; ++round) {
    const auto pick = alg2.choose(s, std::nullopt);
    REQUIRE(pick.size() == 2);
    for (VertexId v : pick) {
      CHECK(in_t_strong(g->coord(v)));
      seen.insert(g->coord(v));
    }
    s = apply_protect(s, pick);
  }
  CHECK(seen.size() == 52);
  CHECK(alg2.choose(s, std::nullopt).size() == 2);
}

TEST_CASE("alg2 guard line") {
  const Alg2Policy alg2;
  const auto line = guard_line(alg2, {10, 26});
  REQUIRE(line.has_value());
  CHECK(line->row);
  CHECK(line->offset == 3);
  CHECK(line->target == Coord{10, 29});
  CHECK(line->cells == std::vector<Coord>{{8, 29}, {9, 29}, {10, 29}, {11, 29}, {12, 29}});
  const auto col = guard_line(alg2, {-27, 3});
  REQUIRE(col.has_value());
  CHECK_FALSE(col->row);
  CHECK(col->offset == -2);
  CHECK_FALSE(guard_line(alg2, {0, 0}).has_value());

  const auto g = window(GridKind::strong, 29);
  const GameState s = after_t_phase(g, 2, 25, {{10, 26}});
  CHECK(coords(*g, alg2.choose(s, event(*g, {10, 26}))) == std::set<Coord>{{9, 29}, {10, 29}});

  // guard line already protected: the two least open D cells
  std::vector<VertexId> prot = s.protected_vertices();
  for (Coord c : line->cells) prot.push_back(g->at(c));
  const GameState guarded(g, s.rules(), s.burned(), prot, 100);
  std::vector<Coord> d;
  for (Coord c : alg2.sets().remainder) {
    if (guarded.is_open(g->at(c))) d.push_back(c);
  }
  std::sort(d.begin(), d.end());
  CHECK(coords(*g, alg2.choose(guarded, event(*g, {10, 26}))) == std::set<Coord>{d[0], d[1]});
}

TEST_CASE("alg2 at a corner source guards the nearest D cells") {
  const Alg2Policy alg2;
  CHECK_FALSE(guard_line(alg2, {-25, -25}).has_value());
  const auto g = window(GridKind::strong, 29);
  const GameState s = after_t_phase(g, 2, 25);
  const auto pick = alg2.choose(s, event(*g, {-25, -25}));
  REQUIRE(pick.size() == 2);
  for (VertexId v : pick) {
    CHECK(alg2.in_remainder(g->coord(v)));
    CHECK(grid_distance(GridKind::strong, g->coord(v), {-25, -25}) == 4);
  }
}

TEST_CASE("greedy pyro goes for the far side") {
  const auto g = window(GridKind::strong, 29);
  const GameState s = after_t_phase(g, 2, 26, {{27, 0}});
  GreedyPyro greedy;
  const VertexId pick = greedy.choose(s);
  CHECK(g->coord(pick) == Coord{27, 0});
  CHECK(reach(s, pick) == 28);
}

TEST_CASE("random pyro is reproducible") {
  const auto g = window(GridKind::strong, 10);
  const GameState s = after_t_phase(g, 2, 5);
  RandomPyro a(42), b(42), c(43);
  std::vector<VertexId> xa, xb, xc;
  for (int i = 0; i < 50; ++i) {
    xa.push_back(a.choose(s));
    xb.push_back(b.choose(s));
    xc.push_back(c.choose(s));
  }
  CHECK(xa == xb);
  CHECK(xa != xc);
  const auto legal = legal_pyro_moves(s);
  for (VertexId v : xa) CHECK(std::binary_search(legal.begin(), legal.end(), v));
}

TEST_CASE("minimax at depth one agrees with greedy on a dominated position") {
  const auto g = window(GridKind::strong, 29);
  for (Coord spike : {Coord{27, 0}, Coord{-3, -27}, Coord{14, 27}}) {
    const GameState s = after_t_phase(g, 2, 26, {spike});
    GreedyPyro greedy;
    MinimaxPyro shallow(std::make_shared<IdlePolicy>(), 29, 1, 8);
    MinimaxPyro modelled(std::make_shared<Alg2Policy>(), 29, 1, 8);
    // exactly one source reaches 28
    int best = 0;
    for (VertexId v : legal_pyro_moves(s)) best += reach(s, v) == 28 ? 1 : 0;
    REQUIRE(best == 1);
    CHECK(shallow.choose(s) == greedy.choose(s));
    CHECK(modelled.choose(s) == greedy.choose(s));
  }
}

TEST_CASE("minimax finds a win two moves ahead against an idle firefighter") {
  const auto g = window(GridKind::cartesian, 6);
  std::vector<VertexId> burned;
  for (VertexId v = 0; v < g->size(); ++v) {
    if (g->norm(v) <= 3) burned.push_back(v);
  }
  const GameState s(g, Ruleset::pyro(1), burned, {}, 3);
  MinimaxPyro search(std::make_shared<IdlePolicy>(), 5, 2, 64);
  const VertexId pick = search.choose(s);
  CHECK(g->norm(pick) == 3);
}

TEST_CASE("seed derivation") {
  CHECK(derive_seed(1, 0) == derive_seed(1, 0));
  std::set<std::uint64_t> seen;
  for (std::uint64_t id = 0; id < 1000; ++id) seen.insert(derive_seed(7, id));
  CHECK(seen.size() == 1000);
  CHECK(derive_seed(1, 5) != derive_seed(2, 5));
}
