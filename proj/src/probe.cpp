#include "pyro/probe.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace pyro {

namespace {

// Scores are from the firefighter's point of view.
constexpr int kContained = 1;
constexpr int kUnknown = 0;
constexpr int kPyroWins = -1;

class GridProbe {
 public:
  GridProbe(GridKind kind, int radius, int k, const ProbeOptions& options)
      : radius_(radius),
        topology_(std::make_shared<const Topology>(Topology::grid(kind, radius + 2))),
        rules_(Ruleset::pyro(k)),
        options_(options) {}

  ProbeResult run(int depth) {
    ProbeResult result;
    result.radius = radius_;
    result.firefighters = rules_.firefighters;
    result.depth = depth;
    GameState root(topology_, rules_, topology_->at({0, 0}));
    const int score = firefighter(root, depth, kPyroWins, kContained, result.principal_variation);
    result.verdict = score == kContained   ? ProbeResult::Verdict::contained
                     : score == kPyroWins  ? ProbeResult::Verdict::pyro_reaches_radius
                                           : ProbeResult::Verdict::undetermined;
    // A decisive score at the root is exact; only an unresolved root depends
    // on the lines that hit the depth limit.
    result.horizon_limited = cut_ && result.verdict == ProbeResult::Verdict::undetermined;
    result.nodes = nodes_;
    return result;
  }

 private:
  void count_node() {
    if (++nodes_ > options_.node_budget) {
      throw BudgetExceeded("probe exceeded the node budget of " +
                           std::to_string(options_.node_budget));
    }
  }

  // Open vertices within the radius that the fire could still reach without
  // first touching the radius, ordered by distance from the origin.
  std::vector<VertexId> candidates(const GameState& s) const {
    std::vector<char> seen(topology_->size(), 0);
    std::deque<VertexId> queue;
    std::vector<VertexId> out;
    for (VertexId b : s.burned()) {
      for (VertexId w : topology_->neighbors(b)) {
        if (!seen[w] && s.is_open(w) && topology_->norm(w) <= radius_) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
    while (!queue.empty()) {
      const VertexId v = queue.front();
      queue.pop_front();
      out.push_back(v);
      if (topology_->norm(v) >= radius_) continue;
      for (VertexId w : topology_->neighbors(v)) {
        if (!seen[w] && s.is_open(w) && topology_->norm(w) <= radius_) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
    std::sort(out.begin(), out.end(), [&](VertexId a, VertexId b) {
      const int na = topology_->norm(a);
      const int nb = topology_->norm(b);
      return na != nb ? na < nb : a < b;
    });
    return out;
  }

  int reach(const GameState& s, VertexId source) const {
    int best = -1;
    for (VertexId w : topology_->neighbors(source)) {
      if (s.is_open(w)) best = std::max(best, topology_->norm(w));
    }
    return best;
  }

  int firefighter(const GameState& s, int depth, int alpha, int beta, std::vector<Move>& line) {
    count_node();
    if (!has_legal_pyro_move(s)) return kContained;
    if (depth == 0) {
      cut_ = true;
      return kUnknown;
    }
    const auto pool = candidates(s);
    const auto k = static_cast<std::size_t>(rules_.firefighters);
    const std::size_t take = std::min(k, pool.size());
    std::vector<std::size_t> idx(take);
    for (std::size_t i = 0; i < take; ++i) idx[i] = i;
    int best = kPyroWins - 1;
    while (true) {
      std::vector<VertexId> move;
      for (std::size_t i : idx) move.push_back(pool[i]);
      std::vector<Move> sub;
      const int score = pyro(apply_protect(s, move), depth, alpha, beta, sub);
      if (score > best) {
        best = score;
        line.clear();
        line.push_back({Move::Kind::protect, move});
        line.insert(line.end(), sub.begin(), sub.end());
      }
      alpha = std::max(alpha, best);
      if (alpha >= beta) break;
      std::size_t i = take;
      while (i > 0 && idx[i - 1] == pool.size() - take + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < take; ++j) idx[j] = idx[j - 1] + 1;
    }
    return best;
  }

  int pyro(const GameState& s, int depth, int alpha, int beta, std::vector<Move>& line) {
    count_node();
    auto sources = legal_pyro_moves(s);
    if (sources.empty()) return kContained;
    std::vector<int> reach_of(topology_->size(), -1);
    for (VertexId v : sources) reach_of[v] = reach(s, v);
    std::stable_sort(sources.begin(), sources.end(),
                     [&](VertexId a, VertexId b) { return reach_of[a] > reach_of[b]; });
    int best = kContained + 1;
    for (VertexId v : sources) {
      auto fired = burn_from(s, v);
      std::vector<Move> sub;
      int score;
      const bool hit = std::any_of(fired.newly_burned.begin(), fired.newly_burned.end(),
                                   [&](VertexId w) { return topology_->norm(w) >= radius_; });
      if (hit) {
        score = kPyroWins;
      } else {
        score = firefighter(fired.state, depth - 1, alpha, beta, sub);
      }
      if (score < best) {
        best = score;
        line.clear();
        line.push_back({Move::Kind::burn, {v}});
        line.insert(line.end(), sub.begin(), sub.end());
      }
      beta = std::min(beta, best);
      if (alpha >= beta) break;
    }
    return best;
  }

  int radius_;
  TopologyPtr topology_;
  Ruleset rules_;
  ProbeOptions options_;
  std::uint64_t nodes_ = 0;
  bool cut_ = false;
};

}  // namespace

const char* to_string(ProbeResult::Verdict verdict) {
  switch (verdict) {
    case ProbeResult::Verdict::contained:
      return "contained";
    case ProbeResult::Verdict::pyro_reaches_radius:
      return "pyro-reaches-radius";
    case ProbeResult::Verdict::undetermined:
      return "undetermined";
  }
  return "undetermined";
}

ProbeResult bounded_minimax_grid(GridKind kind, int radius, int k, int depth,
                                 const ProbeOptions& options) {
  if (radius < 1) throw std::invalid_argument("probe radius must be positive");
  if (k < 1) throw std::invalid_argument("probe needs at least one firefighter");
  if (depth < 0) throw std::invalid_argument("probe depth must be non-negative");
  return GridProbe(kind, radius, k, options).run(depth);
}

std::string format_probe_report(const ProbeResult& result, GridKind kind) {
  const auto topology = Topology::grid(kind, result.radius + 2);
  std::ostringstream os;
  os << "probe grid=" << to_string(kind) << " radius=" << result.radius
     << " k=" << result.firefighters << " depth=" << result.depth << '\n';
  os << "verdict " << to_string(result.verdict) << '\n';
  os << "horizon-limited " << (result.horizon_limited ? "yes" : "no") << '\n';
  os << "nodes " << result.nodes << '\n';
  os << "variation";
  if (result.principal_variation.empty()) os << " -";
  for (const Move& m : result.principal_variation) os << " | " << describe(m, topology);
  os << '\n';
  return os.str();
}

}  // namespace pyro
