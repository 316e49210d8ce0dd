#include "pyro/episode.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "pyro/graph_io.hpp"

namespace pyro {

namespace {

std::vector<Coord> coords_of(const Topology& g, const std::vector<VertexId>& ids) {
  std::vector<Coord> out;
  out.reserve(ids.size());
  for (VertexId v : ids) out.push_back(g.coord(v));
  std::sort(out.begin(), out.end());
  return out;
}

void write_coords(std::ostream& os, const std::vector<Coord>& cells) {
  if (cells.empty()) {
    os << '-';
    return;
  }
  for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? " " : "") << cells[i];
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream is(s);
  while (std::getline(is, part, sep)) out.push_back(trim(part));
  return out;
}

Coord parse_coord(const std::string& text, int line) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ParseError(line, "bad coordinate '" + text + "'");
  try {
    std::size_t used_x = 0;
    std::size_t used_y = 0;
    const int x = std::stoi(text.substr(0, comma), &used_x);
    const int y = std::stoi(text.substr(comma + 1), &used_y);
    if (used_x != comma || used_y != text.size() - comma - 1) throw std::invalid_argument(text);
    return {x, y};
  } catch (const std::logic_error&) {
    throw ParseError(line, "bad coordinate '" + text + "'");
  }
}

std::vector<Coord> parse_coords(const std::string& text, int line) {
  std::vector<Coord> out;
  if (text == "-") return out;
  std::istringstream is(text);
  std::string word;
  while (is >> word) out.push_back(parse_coord(word, line));
  return out;
}

long long parse_number(const std::string& text, int line, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError(line, "bad " + what + " '" + text + "'");
  }
}

// Value following `key` in a "key value" field.
std::string field(const std::string& part, const std::string& key, int line) {
  if (part.rfind(key + " ", 0) != 0 && part != key) {
    throw ParseError(line, "expected '" + key + "' field, got '" + part + "'");
  }
  return part.size() > key.size() ? trim(part.substr(key.size() + 1)) : "";
}

}  // namespace

EpisodeConfig EpisodeConfig::alg1(int radius) {
  EpisodeConfig c;
  c.grid = GridKind::cartesian;
  c.radius = radius;
  c.firefighters = 1;
  c.omniscient_until = static_cast<int>(std::lround(44.0 * radius / kCartesianRadius));
  c.firefighter = "alg1";
  return c;
}

EpisodeConfig EpisodeConfig::alg2(int radius) {
  EpisodeConfig c;
  c.grid = GridKind::strong;
  c.radius = radius;
  c.firefighters = 2;
  c.omniscient_until = static_cast<int>(std::lround(25.0 * radius / kStrongRadius));
  c.firefighter = "alg2";
  return c;
}

bool EpisodeConfig::experimental() const {
  if (firefighter == "alg1") return grid != GridKind::cartesian || radius != kCartesianRadius;
  if (firefighter == "alg2") return grid != GridKind::strong || radius != kStrongRadius;
  return false;
}

void EpisodeConfig::validate() const {
  rules().validate();
  if (radius < 1) throw std::invalid_argument("radius must be positive");
  if (round_budget < 1) throw std::invalid_argument("round budget must be positive");
  if (firefighter != "alg1" && firefighter != "alg2" && firefighter != "none") {
    throw std::invalid_argument("unknown firefighter policy '" + firefighter + "'");
  }
  if (firefighter == "alg1" && grid != GridKind::cartesian) {
    throw std::invalid_argument("alg1 runs on the cartesian grid");
  }
  if (firefighter == "alg2" && grid != GridKind::strong) {
    throw std::invalid_argument("alg2 runs on the strong grid");
  }
  if (pyro != "greedy" && pyro != "random" && pyro != "minimax") {
    throw std::invalid_argument("unknown pyro policy '" + pyro + "'");
  }
  if (grant_radius < 0 || grant_round < 0) throw std::invalid_argument("grant must be non-negative");
}

std::shared_ptr<const FirefighterPolicy> make_firefighter(const EpisodeConfig& config) {
  if (config.firefighter == "alg1") return std::make_shared<Alg1Policy>(config.radius);
  if (config.firefighter == "alg2") return std::make_shared<Alg2Policy>(config.radius);
  if (config.firefighter == "none") return std::make_shared<IdlePolicy>();
  throw std::invalid_argument("unknown firefighter policy '" + config.firefighter + "'");
}

std::unique_ptr<PyroPolicy> make_pyro(const EpisodeConfig& config,
                                      std::shared_ptr<const FirefighterPolicy> model) {
  if (config.pyro == "greedy") return std::make_unique<GreedyPyro>();
  if (config.pyro == "random") return std::make_unique<RandomPyro>(config.seed);
  if (config.pyro == "minimax") {
    return std::make_unique<MinimaxPyro>(std::move(model), config.radius, config.minimax_depth,
                                         config.minimax_breadth);
  }
  throw std::invalid_argument("unknown pyro policy '" + config.pyro + "'");
}

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::contained:
      return "contained";
    case Outcome::boundary_burned:
      return "boundary-burned";
    case Outcome::budget_exhausted:
      return "budget-exhausted";
    case Outcome::policy_fault:
      return "policy-fault";
  }
  return "policy-fault";
}

int EpisodeTrace::max_burned_norm() const {
  int best = 0;
  for (const RoundRecord& r : rounds) {
    for (Coord c : r.newly_burned) best = std::max(best, grid_norm(config.grid, c));
    for (Coord c : r.granted) best = std::max(best, grid_norm(config.grid, c));
  }
  return best;
}

EpisodeTrace run_episode(const FirefighterPolicy& firefighter, PyroPolicy& pyro,
                         const EpisodeConfig& config) {
  config.validate();
  auto topology = std::make_shared<const Topology>(Topology::grid(config.grid, config.radius + 2));
  const Topology& g = *topology;
  GameState s(topology, config.rules(), g.at({0, 0}));

  EpisodeTrace trace;
  trace.config = config;
  RoundRecord start;
  start.newly_burned = {Coord{0, 0}};
  start.burned_total = 1;
  trace.rounds.push_back(start);

  int max_norm = 0;
  std::optional<BurnEvent> last;
  while (true) {
    if (max_norm >= config.radius) {
      trace.outcome = Outcome::boundary_burned;
      break;
    }
    if (!has_legal_pyro_move(s)) {
      trace.outcome = Outcome::contained;
      break;
    }
    if (s.round() >= config.round_budget) {
      trace.outcome = Outcome::budget_exhausted;
      break;
    }
    RoundRecord rec;
    rec.round = s.round() + 1;
    const auto protect = firefighter.choose(s, last);
    try {
      s = apply_protect(std::move(s), protect);
    } catch (const IllegalMove& e) {
      trace.outcome = Outcome::policy_fault;
      trace.fault = "round " + std::to_string(rec.round) + ": firefighter: " + e.what();
      break;
    }
    rec.protected_now = coords_of(g, protect);

    FireResult fired{s, {}};
    if (!has_legal_pyro_move(s)) {
      rec.fire = RoundRecord::Fire::none;
    } else if (s.next_round_full_spread()) {
      rec.fire = RoundRecord::Fire::full;
      fired = full_spread(std::move(s));
      last.reset();
    } else {
      const VertexId source = pyro.choose(s);
      try {
        fired = burn_from(std::move(s), source);
      } catch (const IllegalMove& e) {
        trace.outcome = Outcome::policy_fault;
        trace.fault = "round " + std::to_string(rec.round) + ": pyro: " + e.what();
        break;
      }
      rec.fire = RoundRecord::Fire::source;
      rec.source = g.coord(source);
      last = BurnEvent{source, fired.newly_burned};
    }
    s = std::move(fired.state);
    rec.newly_burned = coords_of(g, fired.newly_burned);

    if (config.grant_radius > 0 && rec.round == config.grant_round &&
        rec.fire != RoundRecord::Fire::none) {
      std::vector<VertexId> burned = s.burned();
      std::vector<VertexId> extra;
      for (VertexId v = 0; v < g.size(); ++v) {
        if (s.is_open(v) && g.norm(v) <= config.grant_radius) extra.push_back(v);
      }
      burned.insert(burned.end(), extra.begin(), extra.end());
      s = GameState(topology, config.rules(), burned, s.protected_vertices(), s.round());
      rec.granted = coords_of(g, extra);
    }

    for (Coord c : rec.newly_burned) max_norm = std::max(max_norm, grid_norm(config.grid, c));
    for (Coord c : rec.granted) max_norm = std::max(max_norm, grid_norm(config.grid, c));
    rec.burned_total = s.burned_count();
    rec.protected_total = s.protected_count();
    const bool stalled = rec.fire == RoundRecord::Fire::none;
    trace.rounds.push_back(std::move(rec));
    if (stalled) {
      trace.outcome = Outcome::contained;
      break;
    }
  }
  return trace;
}

EpisodeTrace run_episode(const EpisodeConfig& config) {
  auto firefighter = make_firefighter(config);
  auto pyro = make_pyro(config, firefighter);
  return run_episode(*firefighter, *pyro, config);
}

std::string format_config(const EpisodeConfig& c) {
  std::ostringstream os;
  os << "config grid=" << to_string(c.grid) << " radius=" << c.radius << " k=" << c.firefighters
     << " omniscient=" << c.omniscient_until << " ff=" << c.firefighter << " pyro=" << c.pyro
     << " seed=" << c.seed << " depth=" << c.minimax_depth << " breadth=" << c.minimax_breadth
     << " budget=" << c.round_budget << " grant=" << c.grant_radius << '@' << c.grant_round;
  return os.str();
}

EpisodeConfig parse_config(const std::string& line) {
  std::istringstream is(line);
  std::string word;
  is >> word;
  if (word != "config") throw ParseError(0, "expected a config line");
  std::map<std::string, std::string> kv;
  while (is >> word) {
    const auto eq = word.find('=');
    if (eq == std::string::npos) throw ParseError(0, "bad config entry '" + word + "'");
    kv[word.substr(0, eq)] = word.substr(eq + 1);
  }
  const auto get = [&](const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw ParseError(0, "config lacks '" + key + "'");
    return it->second;
  };
  const auto number = [&](const std::string& key) {
    return parse_number(get(key), 0, key);
  };
  EpisodeConfig c;
  const auto kind = parse_grid_kind(get("grid"));
  if (!kind) throw ParseError(0, "unknown grid '" + get("grid") + "'");
  c.grid = *kind;
  c.radius = static_cast<int>(number("radius"));
  c.firefighters = static_cast<int>(number("k"));
  c.omniscient_until = static_cast<int>(number("omniscient"));
  c.firefighter = get("ff");
  c.pyro = get("pyro");
  try {
    c.seed = std::stoull(get("seed"));
  } catch (const std::logic_error&) {
    throw ParseError(0, "bad seed");
  }
  c.minimax_depth = static_cast<int>(number("depth"));
  c.minimax_breadth = static_cast<int>(number("breadth"));
  c.round_budget = static_cast<int>(number("budget"));
  const std::string grant = get("grant");
  const auto at = grant.find('@');
  if (at == std::string::npos) throw ParseError(0, "bad grant '" + grant + "'");
  c.grant_radius = static_cast<int>(parse_number(grant.substr(0, at), 0, "grant"));
  c.grant_round = static_cast<int>(parse_number(grant.substr(at + 1), 0, "grant"));
  return c;
}

void write_trace(std::ostream& os, const EpisodeTrace& trace) {
  os << "pyro-trace 1\n" << format_config(trace.config) << '\n';
  for (const RoundRecord& r : trace.rounds) {
    os << "round " << r.round << " | protect ";
    write_coords(os, r.protected_now);
    os << " | burn ";
    switch (r.fire) {
      case RoundRecord::Fire::start:
        os << "START";
        break;
      case RoundRecord::Fire::source:
        os << r.source;
        break;
      case RoundRecord::Fire::full:
        os << "FULL";
        break;
      case RoundRecord::Fire::none:
        os << '-';
        break;
    }
    os << " | new ";
    write_coords(os, r.newly_burned);
    if (!r.granted.empty()) {
      os << " | grant ";
      write_coords(os, r.granted);
    }
    os << " | burned " << r.burned_total << " | protected " << r.protected_total << '\n';
  }
  os << "outcome " << to_string(trace.outcome) << " round " << trace.final_round();
  if (!trace.fault.empty()) os << " | " << trace.fault;
  os << '\n';
}

std::string serialize(const EpisodeTrace& trace) {
  std::ostringstream os;
  write_trace(os, trace);
  return os.str();
}

EpisodeTrace read_trace(std::istream& in) {
  EpisodeTrace trace;
  std::string line;
  int number = 0;
  bool header = false;
  bool config = false;
  bool outcome = false;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (outcome) throw ParseError(number, "content after the outcome line");
    if (!header) {
      if (line != "pyro-trace 1") throw ParseError(number, "missing 'pyro-trace 1' header");
      header = true;
      continue;
    }
    if (!config) {
      try {
        trace.config = parse_config(line);
      } catch (const ParseError& e) {
        throw ParseError(number, e.what());
      }
      config = true;
      continue;
    }
    if (line.rfind("outcome ", 0) == 0) {
      auto parts = split(line, '|');
      std::istringstream is(parts[0]);
      std::string word;
      std::string name;
      std::string round_word;
      long long round = 0;
      is >> word >> name >> round_word >> round;
      if (round_word != "round" || !is) throw ParseError(number, "bad outcome line");
      bool known = false;
      for (Outcome o : {Outcome::contained, Outcome::boundary_burned, Outcome::budget_exhausted,
                        Outcome::policy_fault}) {
        if (name == to_string(o)) {
          trace.outcome = o;
          known = true;
        }
      }
      if (!known) throw ParseError(number, "unknown outcome '" + name + "'");
      if (round != trace.final_round()) throw ParseError(number, "outcome round disagrees with the last record");
      if (parts.size() > 1) {
        trace.fault = line.substr(line.find('|') + 1);
        trace.fault = trim(trace.fault);
      }
      outcome = true;
      continue;
    }
    const auto parts = split(line, '|');
    if (parts.size() != 6 && parts.size() != 7) throw ParseError(number, "bad round record");
    RoundRecord r;
    r.round = static_cast<int>(parse_number(field(parts[0], "round", number), number, "round"));
    r.protected_now = parse_coords(field(parts[1], "protect", number), number);
    const std::string burn = field(parts[2], "burn", number);
    if (burn == "START") {
      r.fire = RoundRecord::Fire::start;
    } else if (burn == "FULL") {
      r.fire = RoundRecord::Fire::full;
    } else if (burn == "-") {
      r.fire = RoundRecord::Fire::none;
    } else {
      r.fire = RoundRecord::Fire::source;
      r.source = parse_coord(burn, number);
    }
    r.newly_burned = parse_coords(field(parts[3], "new", number), number);
    std::size_t next = 4;
    if (parts.size() == 7) r.granted = parse_coords(field(parts[next++], "grant", number), number);
    r.burned_total = static_cast<std::size_t>(
        parse_number(field(parts[next], "burned", number), number, "count"));
    r.protected_total = static_cast<std::size_t>(
        parse_number(field(parts[next + 1], "protected", number), number, "count"));
    trace.rounds.push_back(std::move(r));
  }
  if (!header || !config) throw ParseError(number, "trace lacks a header or config line");
  if (!outcome) throw ParseError(number, "trace lacks an outcome line");
  if (trace.rounds.empty()) throw ParseError(number, "trace has no round records");
  return trace;
}

EpisodeTrace parse_trace(const std::string& text) {
  std::istringstream is(text);
  return read_trace(is);
}

std::string render(const EpisodeTrace& trace, int round, int crop) {
  if (round < 0) round = trace.final_round();
  if (crop < 0) crop = trace.config.radius + 1;
  std::set<Coord> burned;
  std::set<Coord> protect;
  for (const RoundRecord& r : trace.rounds) {
    if (r.round > round) break;
    protect.insert(r.protected_now.begin(), r.protected_now.end());
    burned.insert(r.newly_burned.begin(), r.newly_burned.end());
    burned.insert(r.granted.begin(), r.granted.end());
  }
  std::string out;
  for (int y = crop; y >= -crop; --y) {
    for (int x = -crop; x <= crop; ++x) {
      const Coord c{x, y};
      char glyph = '.';
      if (x == 0 && y == 0) {
        glyph = '@';
      } else if (burned.count(c)) {
        glyph = '#';
      } else if (protect.count(c)) {
        glyph = 'o';
      }
      out += glyph;
    }
    out += '\n';
  }
  return out;
}

}  // namespace pyro
