// Acceptance gate: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "pyro/boundary.hpp"
#include "pyro/probe.hpp"
#include "pyro/rectangle.hpp"
#include "pyro/reduction.hpp"
#include "pyro/solver.hpp"
#include "pyro/verify.hpp"

using namespace pyro;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

TopologyPtr build(int n, const oracle::EdgeList& edges) {
  std::vector<std::pair<VertexId, VertexId>> e;
  for (auto [u, v] : edges) e.emplace_back(u, v);
  return std::make_shared<const Topology>(Topology::finite(n, e));
}

struct Result {
  bool pass = true;
  std::string detail;
};

Result path_values() {
  const auto t0 = Clock::now();
  Result o;
  int solves = 0;
  for (int n = 3; n <= 8; ++n) {
    oracle::EdgeList e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    const auto g = build(n, e);
    for (int r = 0; r < n; ++r) {
      const int expect = (r == 0 || r == n - 1) ? n - 1 : n - 2;
      const int got = msv_pyro(g, r, 1).value;
      ++solves;
      if (got != expect) {
        o.pass = false;
        o.detail = "P_" + std::to_string(n) + " root " + std::to_string(r) + " gave " + std::to_string(got);
        return o;
      }
    }
  }
  const double secs = since(t0);
  o.pass = secs < 10;
  std::ostringstream os;
  os << solves << " rooted paths, " << secs << " s";
  o.detail = os.str();
  return o;
}

Result oracle_equivalence() {
  const auto t0 = Clock::now();
  Result o;
  long long graphs = 0, rooted = 0;
  SolverOptions plain;
  plain.cone_pruning = false;
  SolverOptions reversed;
  reversed.reverse_order = true;
  for (int n = 1; n <= 8; ++n) {
    for (const auto& edges : oracle::connected_graphs(n)) {
      ++graphs;
      const auto g = build(n, edges);
      ExactSolver pruned(g, Ruleset::pyro(1));
      ExactSolver unpruned(g, Ruleset::pyro(1), plain);
      ExactSolver backwards(g, Ruleset::pyro(1), reversed);
      for (int r = 0; r < n; ++r) {
        ++rooted;
        const int brute = oracle::msv_pyro(n, edges, r);
        const int a = pruned.solve(r).value;
        const int b = unpruned.solve(r).value;
        const int c = backwards.solve(r).value;
        if (a != brute || b != brute || c != brute) {
          std::ostringstream os;
          os << "n=" << n << " graph #" << graphs << " root " << r << ": brute " << brute << " solver " << a << '/'
             << b << '/' << c;
          return {false, os.str()};
        }
      }
    }
  }
  std::ostringstream os;
  os << graphs << " connected graphs up to isomorphism on 1..8 vertices (exhaustive), " << rooted
     << " roots, pruned/unpruned/reversed all equal brute force, " << since(t0) << " s";
  o.detail = os.str();
  return o;
}

Result spider_gap() {
  Result o;
  std::ostringstream os;
  int classic_first = -1;
  for (int m = 4; m <= 6; ++m) {
    const auto g = build(m + 9, oracle::spider_clique(m));
    const int classic = msv_classic(g, 0, 1).value;
    const int pyro = msv_pyro(g, 0, 1).value;
    if (classic_first < 0) classic_first = classic;
    o.pass = o.pass && classic == classic_first && pyro - classic >= m;
    os << "m=" << m << " classic " << classic << " pyro " << pyro << "; ";
  }
  os << "classic constant, gap >= m";
  o.detail = os.str();
  return o;
}

Result battery(const EpisodeConfig& base, const char* invariant, double limit) {
  const auto t0 = Clock::now();
  const BatteryReport r = run_battery(base);
  Result o;
  int worst = 0, failures = 0, longest = 0;
  for (const EpisodeSummary& e : r.episodes) {
    worst = std::max(worst, e.max_norm);
    longest = std::max(longest, e.rounds);
    const CheckResult* inv = e.report.find(invariant);
    const bool ok = e.outcome == pyro::Outcome::contained && e.max_norm < base.radius && e.report.passed() &&
                    inv != nullptr && inv->applicable && inv->passed;
    failures += ok ? 0 : 1;
  }
  const double secs = since(t0);
  o.pass = failures == 0 && r.episodes.size() == 202 && secs < limit;
  std::ostringstream os;
  os << r.episodes.size() << " episodes (200 random, greedy, minimax depth " << base.minimax_depth << "), "
     << failures << " failing, max burned distance " << worst << " < " << base.radius << ", longest " << longest
     << " rounds, " << invariant << " held, " << secs << " s";
  o.detail = os.str();
  if (failures > 0) o.detail += "\n" + r.format(false);
  return o;
}

Result t_counts() {
  int enumerated = 0;
  for (int x = -48; x <= 48; ++x) {
    for (int y = -48; y <= 48; ++y) {
      if (std::abs(x) + std::abs(y) != 48) continue;
      const bool in = ((-5 <= x && x <= 5) && (std::abs(y) >= 43)) || ((-5 <= y && y <= 5) && (std::abs(x) >= 43));
      enumerated += in ? 1 : 0;
    }
  }
  const auto strong = t_set_strong(29).size();
  const auto cart = t_set_cartesian(48).size();
  Result o;
  o.pass = strong == 52 && static_cast<int>(cart) == enumerated;
  std::ostringstream os;
  os << "|T strong 29| = " << strong << ", |T cartesian 48| = " << cart << " (enumeration " << enumerated
     << "; one T vertex per round leaves round 45 to rule 4)";
  o.detail = os.str();
  return o;
}

Result rect3() {
  const auto t0 = Clock::now();
  long long tuples = 0, ruled = 0, survive4 = 0;
  for (int k1 = 0; k1 <= 50; ++k1)
    for (int l1 = k1; l1 <= 50; ++l1)
      for (int k2 = k1; k2 <= 50; ++k2)
        for (int l2 = l1; l2 <= 50; ++l2) {
          const RectangleParams p{k1, l1, k2, l2};
          ++tuples;
          ruled += rectangle_infeasible(p, 3).infeasible ? 1 : 0;
          survive4 += rectangle_infeasible(p, 4).infeasible ? 0 : 1;
        }
  const double secs = since(t0);
  Result o;
  o.pass = ruled == tuples && survive4 > 0 && secs < 1.0;
  std::ostringstream os;
  os << ruled << "/" << tuples << " normalized tuples infeasible at f=3, " << survive4
     << " not ruled out at f=4, " << secs << " s";
  o.detail = os.str();
  return o;
}

Result box4() {
  const BoxSchedule& s = box_strategy_4ff();
  const BoxSimulation sim = simulate_box(s);
  Result o;
  o.pass = sim.contained && sim.round <= 8 && sim.protections <= 32 && sim.failure.empty();
  std::ostringstream os;
  os << "contained after round " << sim.round << " with " << sim.protections << " protections, " << sim.burned
     << " burned";
  o.detail = os.str();
  return o;
}

bool separates(const CellSet& burned, const CellSet& wall) {
  int lo = 0, hi = 0;
  for (const CellSet* s : {&burned, &wall}) {
    for (Coord c : *s) {
      lo = std::min({lo, c.x, c.y});
      hi = std::max({hi, c.x, c.y});
    }
  }
  std::set<Coord> seen(burned.begin(), burned.end());
  std::vector<Coord> stack(burned.begin(), burned.end());
  while (!stack.empty()) {
    const Coord c = stack.back();
    stack.pop_back();
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy) {
        const Coord n{c.x + dx, c.y + dy};
        if (wall.count(n) || !seen.insert(n).second) continue;
        if (std::min(n.x, n.y) < lo - 2 || std::max(n.x, n.y) > hi + 2) return false;
        stack.push_back(n);
      }
  }
  return true;
}

Result corners() {
  std::mt19937_64 rng(2024);
  int ok = 0;
  for (int i = 0; i < 100; ++i) {
    const auto curve = random_containing_curve(rng, 1 + i % 4);
    const PopResult r = pop_corners(curve.protected_set, curve.burned);
    const bool pass = separates(curve.burned, curve.protected_set) && is_rectangle_perimeter(r.protected_set) &&
                      r.protected_set.size() == curve.protected_set.size() &&
                      separates(curve.burned, r.protected_set);
    ok += pass ? 1 : 0;
  }
  return {ok == 100, std::to_string(ok) + "/100 minimum curves (radius 1..4) popped to a rectangle of equal size, "
                                          "flood fill still contained"};
}

Result reduction() {
  std::mt19937_64 rng(77);
  int audited = 0, compared = 0, agreed = 0, skipped = 0;
  bool audits = true;
  for (int i = 0; i < 20; ++i) {
    const int q = 1 + i % 2;
    const X3CInstance inst = random_x3c(rng, q, 5);
    const ReducedInstance r = build_reduction(inst);
    for (const AuditCheck& a : audit_reduction(r, inst)) audits = audits && a.passed;
    ++audited;
    if (q == 1 || disjoint_pair_count(inst) == 0) {
      ++compared;
      agreed += verify_reduction_small(inst, r.multiplicity).agree ? 1 : 0;
    } else {
      ++skipped;
    }
  }
  std::ostringstream os;
  os << audited << " instances audited (bipartite, layer distances, complete layers, pairs, counts); "
     << agreed << "/" << compared << " solver comparisons agree; " << skipped
     << " q=2 instances with a disjoint pair rely on the audits";
  return {audits && agreed == compared, os.str()};
}

Result probes() {
  std::ostringstream os;
  ProbeOptions o;
  o.node_budget = 50'000'000;
  // depth 4 on the radius-7 window needs more than 5e7 nodes
  const ProbeResult cart = bounded_minimax_grid(GridKind::cartesian, 7, 1, 3, o);
  const ProbeResult strong = bounded_minimax_grid(GridKind::strong, 3, 1, 4, o);
  std::cout << format_probe_report(cart, GridKind::cartesian) << format_probe_report(strong, GridKind::strong);
  os << "cartesian r=7 k=1 depth 3: " << to_string(cart.verdict) << (cart.horizon_limited ? " (horizon-limited)" : "")
     << "; strong r=3 k=1 depth 4: " << to_string(strong.verdict)
     << (strong.horizon_limited ? " (horizon-limited)" : "") << "; reports only";
  return {true, os.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Result()>>> criteria = {
      {"path values", path_values},
      {"solver equals brute force", oracle_equivalence},
      {"spider-clique gap", spider_gap},
      {"alg2 battery", [] { return battery(EpisodeConfig::alg2(), "alg2-guard", 300); }},
      {"alg1 battery", [] { return battery(EpisodeConfig::alg1(), "alg1-threat", 600); }},
      {"T-set counts", t_counts},
      {"rectangle infeasibility", rect3},
      {"four-firefighter box", box4},
      {"corner popping", corners},
      {"reduction", reduction},
      {"conjecture probes", probes},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << "criterion " << i + 1 << ' ' << (o.pass ? "PASS" : "FAIL") << " | " << criteria[i].first << " | "
              << o.detail << std::endl;
  }
  std::cout << "acceptance " << (failed == 0 ? "PASS" : "FAIL") << " (" << criteria.size() - failed << "/"
            << criteria.size() << ")" << std::endl;
  return failed == 0 ? 0 : 1;
}
