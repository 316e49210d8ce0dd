#include "pyro/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

namespace pyro {

namespace {

struct Obligation {
  int due = -1;
  std::vector<Coord> cells;
};

void fail(CheckResult& check, int round, const std::string& detail) {
  if (!check.passed) return;
  check.passed = false;
  check.first_violation = round;
  check.detail = detail;
}

std::string list(const std::vector<Coord>& cells) {
  std::ostringstream os;
  for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? " " : "") << cells[i];
  return os.str();
}

std::vector<Coord> sorted_coords(const Topology& g, const std::vector<VertexId>& ids) {
  std::vector<Coord> out;
  for (VertexId v : ids) out.push_back(g.coord(v));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return !c.applicable || c.passed; });
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const CheckResult& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string VerificationReport::format() const {
  std::ostringstream os;
  for (const CheckResult& c : checks) {
    os << "check " << c.name << ' ';
    if (!c.applicable) {
      os << "n/a\n";
      continue;
    }
    os << (c.passed ? "pass" : "FAIL");
    if (!c.passed) os << " round " << c.first_violation << " | " << c.detail;
    os << '\n';
  }
  os << "verdict " << (passed() ? "pass" : "FAIL") << '\n';
  return os.str();
}

VerificationReport verify_trace(const EpisodeTrace& trace) {
  const EpisodeConfig& cfg = trace.config;
  CheckResult radius; radius.name = "radius";
  CheckResult replay; replay.name = "replay";
  CheckResult outcome; outcome.name = "outcome";
  CheckResult threat; threat.name = "alg1-threat";
  CheckResult guard; guard.name = "alg2-guard";
  threat.applicable = cfg.firefighter == "alg1" && cfg.grid == GridKind::cartesian;
  guard.applicable = cfg.firefighter == "alg2" && cfg.grid == GridKind::strong;

  for (const RoundRecord& r : trace.rounds) {
    for (const auto* cells : {&r.newly_burned, &r.granted}) {
      for (Coord c : *cells) {
        if (grid_norm(cfg.grid, c) >= cfg.radius) {
          std::ostringstream os;
          os << "burned " << c << " at distance " << grid_norm(cfg.grid, c);
          fail(radius, r.round, os.str());
        }
      }
    }
  }
  if (trace.outcome != Outcome::contained) {
    fail(outcome, trace.final_round(),
         std::string("episode ended ") + to_string(trace.outcome) +
             (trace.fault.empty() ? "" : ": " + trace.fault));
  }

  try {
    cfg.validate();
  } catch (const std::exception& e) {
    fail(replay, 0, std::string("invalid config: ") + e.what());
  }

  if (replay.passed) {
    auto topology = std::make_shared<const Topology>(Topology::grid(cfg.grid, cfg.radius + 2));
    const Topology& g = *topology;
    GameState s(topology, cfg.rules(), g.at({0, 0}));
    const Alg2Policy alg2_geometry(guard.applicable ? cfg.radius : kStrongRadius);
    Obligation pending;
    bool boundary = false;
    std::size_t index = 0;
    for (; index < trace.rounds.size() && replay.passed; ++index) {
      const RoundRecord& r = trace.rounds[index];
      if (index == 0) {
        if (r.round != 0 || r.fire != RoundRecord::Fire::start ||
            r.newly_burned != std::vector<Coord>{Coord{0, 0}} || !r.protected_now.empty() ||
            r.burned_total != 1 || r.protected_total != 0) {
          fail(replay, r.round, "first record must be the round-0 burn of the origin");
        }
        continue;
      }
      if (r.fire == RoundRecord::Fire::start) {
        fail(replay, r.round, "START after round 0");
        break;
      }
      if (r.round != s.round() + 1) {
        fail(replay, r.round, "expected round " + std::to_string(s.round() + 1));
        break;
      }
      if (boundary || !has_legal_pyro_move(s)) {
        fail(replay, r.round, "record after the episode should have ended");
        break;
      }
      std::vector<VertexId> ids;
      for (Coord c : r.protected_now) {
        auto v = g.find(c);
        if (!v) {
          std::ostringstream os;
          os << "protection " << c << " lies outside the window";
          fail(replay, r.round, os.str());
          break;
        }
        ids.push_back(*v);
      }
      if (!replay.passed) break;
      try {
        s = apply_protect(std::move(s), ids);
      } catch (const IllegalMove& e) {
        fail(replay, r.round, std::string("illegal protection: ") + e.what());
        break;
      }
      if (pending.due == r.round) {
        std::vector<Coord> missing;
        for (Coord c : pending.cells) {
          auto v = g.find(c);
          if (!v || !s.is_protected(*v)) missing.push_back(c);
        }
        if (!missing.empty()) {
          fail(threat.applicable ? threat : guard, r.round, "unprotected after the reply: " + list(missing));
        }
        pending = {};
      }

      FireResult fired{s, {}};
      try {
        switch (r.fire) {
          case RoundRecord::Fire::none:
            if (has_legal_pyro_move(s)) fail(replay, r.round, "fire recorded as stalled but could move");
            break;
          case RoundRecord::Fire::full:
            if (!s.next_round_full_spread()) fail(replay, r.round, "full spread outside the omniscient phase");
            fired = full_spread(s);
            break;
          case RoundRecord::Fire::source: {
            if (s.next_round_full_spread()) fail(replay, r.round, "single burn during the omniscient phase");
            auto v = g.find(r.source);
            if (!v) {
              fail(replay, r.round, "burn source outside the window");
              break;
            }
            fired = burn_from(s, *v);
            break;
          }
          case RoundRecord::Fire::start:
            break;
        }
      } catch (const IllegalMove& e) {
        fail(replay, r.round, std::string("illegal burn: ") + e.what());
      }
      if (!replay.passed) break;
      s = std::move(fired.state);
      if (sorted_coords(g, fired.newly_burned) != r.newly_burned) {
        fail(replay, r.round, "recorded new burns differ from the replay");
        break;
      }
      std::vector<Coord> granted;
      if (cfg.grant_radius > 0 && r.round == cfg.grant_round && r.fire != RoundRecord::Fire::none) {
        std::vector<VertexId> burned = s.burned();
        std::vector<VertexId> extra;
        for (VertexId v = 0; v < g.size(); ++v) {
          if (s.is_open(v) && g.norm(v) <= cfg.grant_radius) extra.push_back(v);
        }
        burned.insert(burned.end(), extra.begin(), extra.end());
        s = GameState(topology, cfg.rules(), burned, s.protected_vertices(), s.round());
        granted = sorted_coords(g, extra);
      }
      if (granted != r.granted) {
        fail(replay, r.round, "recorded grant differs from the replay");
        break;
      }
      if (s.burned_count() != r.burned_total || s.protected_count() != r.protected_total) {
        fail(replay, r.round, "recorded totals differ from the replay");
        break;
      }
      for (const auto* cells : {&r.newly_burned, &r.granted}) {
        for (Coord c : *cells) boundary = boundary || grid_norm(cfg.grid, c) >= cfg.radius;
      }

      if (r.fire == RoundRecord::Fire::source) {
        if (threat.applicable && grid_norm(cfg.grid, r.source) == cfg.radius - 2) {
          pending = {r.round + 1, threat_set(r.source, cfg.radius).members};
        } else if (guard.applicable) {
          auto line = guard_line(alg2_geometry, r.source);
          if (line && std::abs(line->offset) <= 2) pending = {r.round + 1, line->cells};
        }
      }
    }
    if (replay.passed) {
      Outcome expected = Outcome::contained;
      if (boundary) {
        expected = Outcome::boundary_burned;
      } else if (has_legal_pyro_move(s)) {
        expected = s.round() >= cfg.round_budget ? Outcome::budget_exhausted : Outcome::policy_fault;
      }
      if (trace.outcome != expected) {
        fail(replay, trace.final_round(),
             std::string("outcome ") + to_string(trace.outcome) + " but replay gives " + to_string(expected));
      }
    }
  }

  VerificationReport report;
  report.checks = {radius, replay, outcome, threat, guard};
  return report;
}

bool BatteryReport::passed() const {
  return !episodes.empty() && std::all_of(episodes.begin(), episodes.end(), [](const EpisodeSummary& e) {
    return e.report.passed();
  });
}

std::string BatteryReport::format(bool verbose) const {
  std::ostringstream os;
  std::size_t ok = 0;
  int worst = 0;
  int longest = 0;
  for (const EpisodeSummary& e : episodes) {
    ok += e.report.passed() ? 1 : 0;
    worst = std::max(worst, e.max_norm);
    longest = std::max(longest, e.rounds);
  }
  os << "battery ff=" << base.firefighter << " grid=" << to_string(base.grid) << " radius=" << base.radius
     << " k=" << base.firefighters << (base.experimental() ? " experimental" : "") << '\n';
  os << "episodes " << episodes.size() << " passed " << ok << " failed " << episodes.size() - ok << '\n';
  os << "max-burned-distance " << worst << " longest-episode " << longest << " rounds\n";
  for (const EpisodeSummary& e : episodes) {
    if (!verbose && e.report.passed()) continue;
    os << "episode " << e.id << " pyro=" << e.pyro << " seed=" << e.seed << " outcome=" << to_string(e.outcome)
       << " rounds=" << e.rounds << " max-distance=" << e.max_norm << " burned=" << e.burned << ' '
       << (e.report.passed() ? "pass" : "FAIL") << '\n';
    if (!e.report.passed()) {
      for (const CheckResult& c : e.report.checks) {
        if (c.applicable && !c.passed) {
          os << "  " << c.name << " round " << c.first_violation << " | " << c.detail << '\n';
        }
      }
    }
  }
  os << "verdict " << (passed() ? "pass" : "FAIL") << '\n';
  return os.str();
}

BatteryReport run_battery(const EpisodeConfig& base, const BatteryOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<EpisodeConfig> configs;
  for (int i = 0; i < options.random_episodes; ++i) {
    EpisodeConfig c = base;
    c.pyro = "random";
    c.seed = derive_seed(options.master_seed, static_cast<std::uint64_t>(i));
    configs.push_back(c);
  }
  if (options.greedy) {
    EpisodeConfig c = base;
    c.pyro = "greedy";
    c.seed = 0;
    configs.push_back(c);
  }
  if (options.minimax) {
    EpisodeConfig c = base;
    c.pyro = "minimax";
    c.seed = 0;
    configs.push_back(c);
  }

  BatteryReport report;
  report.base = base;
  report.episodes.resize(configs.size());
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      const EpisodeTrace trace = run_episode(configs[i]);
      EpisodeSummary& e = report.episodes[i];
      e.id = static_cast<int>(i);
      e.pyro = configs[i].pyro;
      e.seed = configs[i].seed;
      e.outcome = trace.outcome;
      e.rounds = trace.final_round();
      e.max_norm = trace.max_burned_norm();
      e.burned = trace.rounds.back().burned_total;
      e.report = verify_trace(trace);
    }
  };
  unsigned workers = options.workers ? options.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, configs.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace pyro
