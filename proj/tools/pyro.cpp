#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "pyro/episode.hpp"
#include "pyro/graph_io.hpp"
#include "pyro/probe.hpp"
#include "pyro/rectangle.hpp"
#include "pyro/reduction.hpp"
#include "pyro/solver.hpp"
#include "pyro/verify.hpp"

using namespace pyro;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kBudget = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

GridKind grid_from(const std::string& name) {
  auto kind = parse_grid_kind(name);
  if (!kind) throw UsageError("unknown grid '" + name + "' (cartesian or strong)");
  return *kind;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out || !(out << text)) throw UsageError("cannot write " + path);
}

// ---- simulate ----

struct SimulateArgs {
  std::string grid = "cartesian";
  int radius = kCartesianRadius;
  std::string ff = "alg1";
  std::string pyro = "greedy";
  std::uint64_t seed = 0;
  int k = 0;
  int omniscient = -1;
  int depth = 3;
  int breadth = 8;
  int budget = 5000;
  std::string grant;
  std::string out;
  bool quiet = false;
};

int run_simulate(const SimulateArgs& a) {
  const GridKind kind = grid_from(a.grid);
  EpisodeConfig c;
  if (a.ff == "alg1") {
    c = EpisodeConfig::alg1(a.radius);
  } else if (a.ff == "alg2") {
    c = EpisodeConfig::alg2(a.radius);
  } else {
    c.firefighter = a.ff;
    c.omniscient_until = 0;
  }
  c.grid = kind;
  c.radius = a.radius;
  if (a.k > 0) c.firefighters = a.k;
  if (a.omniscient >= 0) c.omniscient_until = a.omniscient;
  c.pyro = a.pyro;
  c.seed = a.seed;
  c.minimax_depth = a.depth;
  c.minimax_breadth = a.breadth;
  c.round_budget = a.budget;
  if (!a.grant.empty()) {
    const auto at = a.grant.find('@');
    if (at == std::string::npos) throw UsageError("--grant takes RADIUS@ROUND");
    try {
      c.grant_radius = std::stoi(a.grant.substr(0, at));
      c.grant_round = std::stoi(a.grant.substr(at + 1));
    } catch (const std::logic_error&) {
      throw UsageError("--grant takes RADIUS@ROUND");
    }
  }
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const EpisodeTrace trace = run_episode(c);
  if (!a.out.empty()) write_file(a.out, serialize(trace));
  const VerificationReport report = verify_trace(trace);
  std::cout << format_config(c) << (c.experimental() ? " experimental" : "") << '\n';
  std::cout << "outcome " << to_string(trace.outcome) << " round " << trace.final_round() << '\n';
  if (!trace.fault.empty()) std::cout << "fault " << trace.fault << '\n';
  std::cout << "burned " << trace.rounds.back().burned_total << " protected " << trace.rounds.back().protected_total
            << " max-distance " << trace.max_burned_norm() << '\n';
  if (!a.quiet) std::cout << report.format();
  return trace.outcome == Outcome::contained ? kOk : kFailed;
}

// ---- solve ----

struct SolveArgs {
  std::string graph;
  std::string root = "0";
  int k = 1;
  std::string rules = "pyro";
  long long threshold = -1;
  std::size_t budget = 20'000'000;
  bool no_pruning = false;
};

int run_solve(const SolveArgs& a) {
  auto graph = std::make_shared<const Topology>(read_graph_file(a.graph));
  std::optional<VertexId> root = graph->find_name(a.root);
  if (!root) {
    try {
      std::size_t used = 0;
      const long long id = std::stoll(a.root, &used);
      if (used == a.root.size() && id >= 0 && static_cast<std::size_t>(id) < graph->size()) {
        root = static_cast<VertexId>(id);
      }
    } catch (const std::logic_error&) {
    }
  }
  if (!root) throw UsageError("unknown root '" + a.root + "'");
  if (a.rules != "pyro" && a.rules != "classic") throw UsageError("--rules is pyro or classic");
  SolverOptions options;
  options.state_budget = a.budget;
  options.cone_pruning = !a.no_pruning;
  const Ruleset rules = a.rules == "pyro" ? Ruleset::pyro(a.k) : Ruleset::classic(a.k);
  ExactSolver solver(graph, rules, options);
  const SolveResult r = solver.solve(*root);
  std::cout << "graph " << a.graph << " vertices " << graph->size() << " edges " << graph->edge_count() << '\n';
  std::cout << "rules " << a.rules << " k " << a.k << " root " << graph->name(*root) << '\n';
  std::cout << "value " << r.value << '\n';
  if (a.threshold >= 0) {
    std::cout << "threshold " << a.threshold << ' ' << (r.value >= a.threshold ? "reached" : "not-reached") << '\n';
  }
  std::cout << "variation";
  if (r.principal_variation.empty()) std::cout << " -";
  for (const Move& m : r.principal_variation) std::cout << " | " << describe(m, *graph);
  std::cout << '\n' << "positions " << solver.table_size() << " nodes " << r.nodes << '\n';
  return kOk;
}

// ---- verify ----

struct VerifyArgs {
  std::string target;
  std::string trace;
  int episodes = 200;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  int max = 50;
  int count = 100;
  int radius = 0;
  bool verbose = false;
};

int verify_battery(const VerifyArgs& a, bool alg1) {
  EpisodeConfig base = alg1 ? EpisodeConfig::alg1(a.radius > 0 ? a.radius : kCartesianRadius)
                            : EpisodeConfig::alg2(a.radius > 0 ? a.radius : kStrongRadius);
  BatteryOptions options;
  options.random_episodes = a.episodes;
  options.master_seed = a.seed;
  options.workers = a.workers;
  const BatteryReport report = run_battery(base, options);
  std::cout << report.format(a.verbose);
  return report.passed() ? kOk : kFailed;
}

int verify_rect3(const VerifyArgs& a) {
  long long tuples = 0;
  long long ruled_out = 0;
  std::optional<RectangleParams> survivor;
  for (int k1 = 0; k1 <= a.max; ++k1) {
    for (int l1 = k1; l1 <= a.max; ++l1) {
      for (int k2 = k1; k2 <= a.max; ++k2) {
        for (int l2 = l1; l2 <= a.max; ++l2) {
          const RectangleParams p{k1, l1, k2, l2};
          ++tuples;
          if (rectangle_infeasible(p, 3).infeasible) {
            ++ruled_out;
          } else if (!survivor) {
            survivor = p;
          }
        }
      }
    }
  }
  std::cout << "rect3 max " << a.max << " tuples " << tuples << " infeasible " << ruled_out << '\n';
  if (survivor) {
    std::cout << "survivor " << survivor->k1 << ' ' << survivor->l1 << ' ' << survivor->k2 << ' ' << survivor->l2 << '\n';
  }
  const RectangleParams probe{2, 3, 5, 6};
  std::cout << "f=4 (2,3,5,6) " << rectangle_infeasible(probe, 4).inequality() << '\n';
  const bool pass = ruled_out == tuples;
  std::cout << "verdict " << (pass ? "pass" : "FAIL") << '\n';
  return pass ? kOk : kFailed;
}

int verify_box4() {
  const BoxSchedule& s = box_strategy_4ff();
  const BoxSimulation sim = simulate_box(s);
  std::cout << "box4 rectangle x " << -s.rectangle.k2 << ".." << s.rectangle.k1 << " y " << -s.rectangle.l2 << ".."
            << s.rectangle.l1 << " protections " << s.protections() << '\n';
  for (std::size_t t = 0; t < s.rounds.size(); ++t) {
    std::cout << "round " << t + 1 << " |";
    for (Coord c : s.rounds[t]) std::cout << ' ' << c;
    std::cout << '\n';
  }
  std::cout << "contained " << (sim.contained ? "yes" : "no") << " round " << sim.round << " protected "
            << sim.protections << " burned " << sim.burned << '\n';
  if (!sim.failure.empty()) std::cout << "failure " << sim.failure << '\n';
  const bool pass = sim.contained && sim.round <= 8 && sim.protections <= 32;
  std::cout << "verdict " << (pass ? "pass" : "FAIL") << '\n';
  return pass ? kOk : kFailed;
}

int verify_corners(const VerifyArgs& a) {
  std::mt19937_64 rng(a.seed);
  int ok = 0;
  for (int i = 0; i < a.count; ++i) {
    const auto curve = random_containing_curve(rng, 1 + i % 4);
    const PopResult r = pop_corners(curve.protected_set, curve.burned);
    const bool pass = is_rectangle_perimeter(r.protected_set) &&
                      r.protected_set.size() == curve.protected_set.size() &&
                      flood_region(curve.burned, r.protected_set).has_value();
    ok += pass ? 1 : 0;
    if (!pass || a.verbose) {
      std::cout << "curve " << i << " cells " << curve.protected_set.size() << " pops " << r.pops << ' '
                << (pass ? "pass" : "FAIL") << '\n';
    }
  }
  std::cout << "corners curves " << a.count << " rectangles " << ok << '\n';
  std::cout << "verdict " << (ok == a.count ? "pass" : "FAIL") << '\n';
  return ok == a.count ? kOk : kFailed;
}

int run_verify(const VerifyArgs& a) {
  if (a.target == "alg1-battery") return verify_battery(a, true);
  if (a.target == "alg2-battery") return verify_battery(a, false);
  if (a.target == "rect3") return verify_rect3(a);
  if (a.target == "box4") return verify_box4();
  if (a.target == "corners") return verify_corners(a);
  if (a.target == "trace") {
    if (a.trace.empty()) throw UsageError("verify trace needs a trace file");
    std::ifstream in(a.trace);
    if (!in) throw UsageError("cannot open " + a.trace);
    const VerificationReport report = verify_trace(read_trace(in));
    std::cout << report.format();
    return report.passed() ? kOk : kFailed;
  }
  throw UsageError("unknown verification '" + a.target + "'");
}

// ---- reduce ----

struct ReduceArgs {
  std::string x3c;
  std::uint64_t m = 0;
  std::string out;
  bool check = false;
};

int run_reduce(const ReduceArgs& a) {
  const X3CInstance inst = read_x3c_file(a.x3c);
  const ReducedInstance r = build_reduction(inst, a.m > 0 ? std::optional<std::uint64_t>(a.m) : std::nullopt);
  std::ostringstream graph;
  write_graph(graph, *r.graph);
  if (a.out.empty()) {
    std::cout << graph.str();
  } else {
    write_file(a.out, graph.str());
  }
  std::cout << "q " << r.q << " sets " << r.set_count << " disjoint-pairs " << r.disjoint_pairs << '\n';
  std::cout << "vertices " << r.graph->size() << " edges " << r.graph->edge_count() << " multiplicity "
            << r.multiplicity << (r.reduced_multiplicity ? " reduced (threshold equivalence not guaranteed)" : "")
            << '\n';
  std::cout << "threshold " << r.threshold << '\n';
  bool pass = true;
  for (const AuditCheck& c : audit_reduction(r, inst)) {
    std::cout << "audit " << c.name << ' ' << (c.passed ? "pass" : "FAIL");
    if (!c.passed) std::cout << " | " << c.detail;
    std::cout << '\n';
    pass = pass && c.passed;
  }
  if (a.check) {
    const SmallVerification v = verify_reduction_small(inst, r.multiplicity);
    std::cout << "msv " << v.value << " threshold " << v.threshold << " cover " << (v.cover_exists ? "yes" : "no")
              << " agree " << (v.agree ? "yes" : "no");
    if (!v.note.empty()) std::cout << " | " << v.note;
    std::cout << '\n';
    pass = pass && (v.agree || v.reduced_multiplicity);
  }
  return pass ? kOk : kFailed;
}

// ---- probe ----

struct ProbeArgs {
  std::string grid = "cartesian";
  int radius = 7;
  int k = 1;
  int depth = 4;
  std::uint64_t budget = 20'000'000;
};

int run_probe(const ProbeArgs& a) {
  ProbeOptions options;
  options.node_budget = a.budget;
  const GridKind kind = grid_from(a.grid);
  const ProbeResult r = bounded_minimax_grid(kind, a.radius, a.k, a.depth, options);
  std::cout << format_probe_report(r, kind);
  return kOk;
}

// ---- render ----

struct RenderArgs {
  std::string trace;
  int round = -1;
  int crop = -1;
};

int run_render(const RenderArgs& a) {
  std::ifstream in(a.trace);
  if (!in) throw UsageError("cannot open " + a.trace);
  const EpisodeTrace trace = read_trace(in);
  const int round = a.round < 0 ? trace.final_round() : a.round;
  std::cout << "round " << round << '\n' << render(trace, round, a.crop);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pyro game engine, exact solver and strategy verifier"};
  app.set_config("--config", "", "Read options from a TOML/INI file");
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Play one episode on a grid and verify its trace");
  simulate->add_option("--grid", sim.grid, "cartesian or strong")->capture_default_str();
  simulate->add_option("--radius", sim.radius, "Sphere radius the fire must not reach")->capture_default_str();
  simulate->add_option("--ff", sim.ff, "alg1, alg2 or none")->capture_default_str();
  simulate->add_option("--pyro", sim.pyro, "greedy, random or minimax")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Seed of the random pyro")->capture_default_str();
  simulate->add_option("--k", sim.k, "Firefighters per round (default from --ff)");
  simulate->add_option("--omniscient", sim.omniscient, "Full-spread rounds (default from --ff)");
  simulate->add_option("--depth", sim.depth, "Minimax depth")->capture_default_str();
  simulate->add_option("--breadth", sim.breadth, "Minimax breadth")->capture_default_str();
  simulate->add_option("--budget", sim.budget, "Round budget")->capture_default_str();
  simulate->add_option("--grant", sim.grant, "Burn the ball RADIUS after round ROUND (RADIUS@ROUND)");
  simulate->add_option("--out", sim.out, "Write the trace here");
  simulate->add_flag("--quiet", sim.quiet, "Skip the per-check report");

  SolveArgs sol;
  auto* solve = app.add_subcommand("solve", "Exact value of a finite graph");
  solve->add_option("graph", sol.graph, "Graph file ('n m' then edges)")->required();
  solve->add_option("--root", sol.root, "Root id or name")->capture_default_str();
  solve->add_option("--k", sol.k, "Firefighters per round")->capture_default_str();
  solve->add_option("--rules", sol.rules, "pyro or classic")->capture_default_str();
  solve->add_option("--threshold", sol.threshold, "Report whether the value reaches this");
  solve->add_option("--budget", sol.budget, "Memo table limit")->capture_default_str();
  solve->add_flag("--no-pruning", sol.no_pruning, "Consider every open vertex for protection");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "alg1-battery, alg2-battery, rect3, box4, corners or trace FILE");
  verify->add_option("target", ver.target, "What to verify")->required();
  verify->add_option("trace", ver.trace, "Trace file for 'trace'");
  verify->add_option("--episodes", ver.episodes, "Random adversaries in a battery")->capture_default_str();
  verify->add_option("--seed", ver.seed, "Master seed")->capture_default_str();
  verify->add_option("--workers", ver.workers, "Battery threads (0: all cores)")->capture_default_str();
  verify->add_option("--radius", ver.radius, "Battery radius override (experimental)");
  verify->add_option("--max", ver.max, "Largest rectangle parameter for rect3")->capture_default_str();
  verify->add_option("--count", ver.count, "Curves for corners")->capture_default_str();
  verify->add_flag("--verbose", ver.verbose, "List passing items too");

  ReduceArgs red;
  auto* reduce = app.add_subcommand("reduce", "Build the bipartite graph of an exact-cover instance");
  reduce->add_option("--x3c", red.x3c, "Instance file (3q, then one triple per line)")->required();
  reduce->add_option("--m", red.m, "Subdivided edges per disjoint pair (default 9q^4)");
  reduce->add_option("--out", red.out, "Write the graph here instead of stdout");
  reduce->add_flag("--check", red.check, "Solve the graph and compare with exact cover");

  ProbeArgs pro;
  auto* probe = app.add_subcommand("probe", "Depth-limited search for containment at a radius");
  probe->add_option("--grid", pro.grid, "cartesian or strong")->capture_default_str();
  probe->add_option("--radius", pro.radius, "Radius the fire must not reach")->capture_default_str();
  probe->add_option("--k", pro.k, "Firefighters per round")->capture_default_str();
  probe->add_option("--depth", pro.depth, "Rounds searched")->capture_default_str();
  probe->add_option("--budget", pro.budget, "Node limit")->capture_default_str();

  RenderArgs ren;
  auto* rend = app.add_subcommand("render", "ASCII picture of a trace");
  rend->add_option("trace", ren.trace, "Trace file")->required();
  rend->add_option("--round", ren.round, "Round to show (default: last)");
  rend->add_option("--crop", ren.crop, "Half-width of the picture (default: radius + 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*simulate) return run_simulate(sim);
    if (*solve) return run_solve(sol);
    if (*verify) return run_verify(ver);
    if (*reduce) return run_reduce(red);
    if (*probe) return run_probe(pro);
    if (*rend) return run_render(ren);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
