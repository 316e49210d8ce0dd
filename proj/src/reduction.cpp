#include "pyro/reduction.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include "pyro/graph_io.hpp"

namespace pyro {

namespace {

constexpr std::uint64_t kMaxVertices = 20'000'000;

std::string layer_name(int i, std::size_t j) {
  return "L(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

std::uint64_t choose2(std::uint64_t n) { return n * (n - 1) / 2; }

}  // namespace

void X3CInstance::validate() const {
  if (q < 1) throw std::invalid_argument("q must be positive");
  std::set<std::array<int, 3>> seen;
  for (const auto& t : sets) {
    auto s = t;
    std::sort(s.begin(), s.end());
    if (s[0] < 1 || s[2] > ground_size()) throw std::invalid_argument("triple element out of range");
    if (s[0] == s[1] || s[1] == s[2]) throw std::invalid_argument("triple elements must be distinct");
    if (!seen.insert(s).second) throw std::invalid_argument("duplicate triple");
  }
}

X3CInstance read_x3c(std::istream& in) {
  X3CInstance inst;
  std::string line;
  int line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    std::string probe;
    if (!(row >> probe)) continue;
    row.clear();
    row.str(line);
    std::string extra;
    if (!header) {
      long long n = 0;
      if (!(row >> n) || (row >> extra)) throw ParseError(line_no, "expected ground set size 3q");
      if (n < 3 || n % 3 != 0) throw ParseError(line_no, "ground set size must be a positive multiple of 3");
      inst.q = static_cast<int>(n / 3);
      header = true;
      continue;
    }
    std::array<int, 3> t{};
    if (!(row >> t[0] >> t[1] >> t[2]) || (row >> extra)) throw ParseError(line_no, "expected a triple 'a b c'");
    inst.sets.push_back(t);
  }
  if (!header) throw ParseError(line_no, "missing ground set size");
  try {
    inst.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(line_no, e.what());
  }
  return inst;
}

X3CInstance read_x3c_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_x3c(in);
}

void write_x3c(std::ostream& out, const X3CInstance& inst) {
  out << inst.ground_size() << '\n';
  for (const auto& t : inst.sets) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

X3CInstance random_x3c(std::mt19937_64& rng, int q, int max_sets) {
  if (q < 1 || max_sets < 1) throw std::invalid_argument("bad random instance bounds");
  const int n = 3 * q;
  std::vector<std::array<int, 3>> all;
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      for (int c = b + 1; c <= n; ++c) all.push_back({a, b, c});
    }
  }
  std::shuffle(all.begin(), all.end(), rng);
  const int cap = std::min<int>(max_sets, static_cast<int>(all.size()));
  std::uniform_int_distribution<int> count(1, cap);
  X3CInstance inst;
  inst.q = q;
  inst.sets.assign(all.begin(), all.begin() + count(rng));
  return inst;
}

bool disjoint(const std::array<int, 3>& a, const std::array<int, 3>& b) {
  for (int x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) return false;
  }
  return true;
}

std::size_t disjoint_pair_count(const X3CInstance& inst) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < inst.sets.size(); ++i) {
    for (std::size_t j = i + 1; j < inst.sets.size(); ++j) n += disjoint(inst.sets[i], inst.sets[j]) ? 1 : 0;
  }
  return n;
}

bool exact_cover_exists(const X3CInstance& inst) {
  inst.validate();
  if (inst.ground_size() > 63) throw BudgetExceeded("exact cover search supports 3q <= 63");
  std::vector<std::uint64_t> masks;
  for (const auto& t : inst.sets) {
    std::uint64_t m = 0;
    for (int x : t) m |= std::uint64_t{1} << (x - 1);
    masks.push_back(m);
  }
  const std::uint64_t full = (std::uint64_t{1} << inst.ground_size()) - 1;
  const auto search = [&](auto&& self, std::uint64_t covered) -> bool {
    if (covered == full) return true;
    const std::uint64_t first = ~covered & full & (covered + 1);  // lowest uncovered element
    for (std::uint64_t m : masks) {
      if ((m & first) && !(m & covered) && self(self, covered | m)) return true;
    }
    return false;
  };
  return search(search, 0);
}

std::uint64_t default_multiplicity(int q) {
  const auto qq = static_cast<std::uint64_t>(q);
  return 9 * qq * qq * qq * qq;
}

std::uint64_t reduction_vertex_count(int q, std::size_t sets, std::uint64_t m, std::size_t pairs) {
  return 1 + static_cast<std::uint64_t>(q - 1) * sets + sets + m * pairs;
}

std::uint64_t reduction_edge_count(int q, std::size_t sets, std::uint64_t m, std::size_t pairs) {
  const std::uint64_t c = sets;
  return c + static_cast<std::uint64_t>(q - 1) * c * c + 2 * m * pairs;
}

std::uint64_t reduction_threshold(int q, std::uint64_t m) {
  return static_cast<std::uint64_t>(q) + choose2(static_cast<std::uint64_t>(q)) * m;
}

ReducedInstance build_reduction(const X3CInstance& inst, std::optional<std::uint64_t> multiplicity) {
  inst.validate();
  if (inst.sets.empty()) throw std::invalid_argument("instance has no triples");
  const std::uint64_t m = multiplicity.value_or(default_multiplicity(inst.q));
  if (m < 1) throw std::invalid_argument("multiplicity must be positive");
  const std::size_t c = inst.sets.size();
  const std::size_t pairs = disjoint_pair_count(inst);
  const std::uint64_t total = reduction_vertex_count(inst.q, c, m, pairs);
  if (total > kMaxVertices) throw BudgetExceeded("reduced graph would have " + std::to_string(total) + " vertices");

  std::vector<std::string> names{"r"};
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<VertexId> previous{0};
  for (int i = 1; i <= inst.q; ++i) {
    std::vector<VertexId> layer;
    for (std::size_t j = 1; j <= c; ++j) {
      layer.push_back(static_cast<VertexId>(names.size()));
      names.push_back(i < inst.q ? layer_name(i, j) : "c_" + std::to_string(j));
    }
    for (VertexId u : previous) {
      for (VertexId v : layer) edges.emplace_back(u, v);
    }
    previous = std::move(layer);
  }
  const std::vector<VertexId>& cover = previous;
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = i + 1; j < c; ++j) {
      if (!disjoint(inst.sets[i], inst.sets[j])) continue;
      for (std::uint64_t t = 1; t <= m; ++t) {
        const auto p = static_cast<VertexId>(names.size());
        names.push_back("P(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(t) + ")");
        edges.emplace_back(cover[i], p);
        edges.emplace_back(p, cover[j]);
      }
    }
  }

  ReducedInstance out;
  const std::size_t n = names.size();
  out.graph = std::make_shared<const Topology>(Topology::finite(n, edges, std::move(names)));
  out.root = 0;
  out.multiplicity = m;
  out.threshold = reduction_threshold(inst.q, m);
  out.reduced_multiplicity = m < default_multiplicity(inst.q);
  out.q = inst.q;
  out.set_count = c;
  out.disjoint_pairs = pairs;
  return out;
}

std::vector<AuditCheck> audit_reduction(const ReducedInstance& reduced, const X3CInstance& inst) {
  const Topology& g = *reduced.graph;
  const int q = reduced.q;
  const std::size_t c = inst.sets.size();
  std::vector<AuditCheck> checks;
  const auto dist = g.bfs_distances(reduced.root);

  AuditCheck bip{"bipartite", true, ""};
  {
    std::vector<int> color(g.size(), -1);
    for (VertexId s = 0; s < g.size() && bip.passed; ++s) {
      if (color[s] != -1) continue;
      color[s] = 0;
      std::deque<VertexId> queue{s};
      while (!queue.empty() && bip.passed) {
        const VertexId v = queue.front();
        queue.pop_front();
        for (VertexId w : g.neighbors(v)) {
          if (color[w] == -1) {
            color[w] = 1 - color[v];
            queue.push_back(w);
          } else if (color[w] == color[v]) {
            bip.passed = false;
            bip.detail = "edge " + g.name(v) + " - " + g.name(w) + " joins one colour class";
          }
        }
      }
    }
  }
  checks.push_back(bip);

  AuditCheck layers{"layer-distance", true, ""};
  std::vector<std::vector<VertexId>> by_distance(static_cast<std::size_t>(q) + 2);
  for (VertexId v = 0; v < g.size(); ++v) {
    const std::string name = g.name(v);
    int expected = -1;
    if (name == "r") {
      expected = 0;
    } else if (name.rfind("L(", 0) == 0) {
      expected = std::stoi(name.substr(2));
    } else if (name.rfind("c_", 0) == 0) {
      expected = q;
    } else if (name.rfind("P(", 0) == 0) {
      expected = q + 1;
    }
    if (expected < 0 || dist[v] != expected) {
      if (layers.passed) layers.detail = name + " at distance " + std::to_string(dist[v]);
      layers.passed = false;
      continue;
    }
    by_distance[static_cast<std::size_t>(expected)].push_back(v);
  }
  checks.push_back(layers);

  AuditCheck complete{"complete-layers", true, ""};
  for (int i = 0; i < q && complete.passed; ++i) {
    for (VertexId u : by_distance[i]) {
      for (VertexId v : by_distance[i + 1]) {
        if (!g.adjacent(u, v)) {
          complete.passed = false;
          complete.detail = g.name(u) + " not adjacent to " + g.name(v);
          break;
        }
      }
      if (!complete.passed) break;
    }
  }
  checks.push_back(complete);

  AuditCheck pairs{"disjoint-pairs", true, ""};
  const auto& cover = by_distance[static_cast<std::size_t>(q)];
  if (cover.size() != c) {
    pairs.passed = false;
    pairs.detail = "expected " + std::to_string(c) + " cover vertices";
  }
  for (std::size_t i = 0; i < cover.size() && pairs.passed; ++i) {
    for (std::size_t j = i + 1; j < cover.size() && pairs.passed; ++j) {
      std::uint64_t paths = 0;
      for (VertexId w : g.neighbors(cover[i])) {
        if (dist[w] == q + 1 && g.neighbors(w).size() == 2 && g.adjacent(w, cover[j])) ++paths;
      }
      const std::uint64_t want = disjoint(inst.sets[i], inst.sets[j]) ? reduced.multiplicity : 0;
      if (paths != want) {
        pairs.passed = false;
        pairs.detail = g.name(cover[i]) + "-" + g.name(cover[j]) + " has " + std::to_string(paths) +
                       " subdivided edges, expected " + std::to_string(want);
      }
    }
  }
  checks.push_back(pairs);

  AuditCheck counts{"counts", true, ""};
  const auto pairs_n = disjoint_pair_count(inst);
  const auto nv = reduction_vertex_count(q, c, reduced.multiplicity, pairs_n);
  const auto ne = reduction_edge_count(q, c, reduced.multiplicity, pairs_n);
  const auto k = reduction_threshold(q, reduced.multiplicity);
  if (g.size() != nv || g.edge_count() != ne || reduced.threshold != k) {
    counts.passed = false;
    counts.detail = "vertices " + std::to_string(g.size()) + "/" + std::to_string(nv) + ", edges " +
                    std::to_string(g.edge_count()) + "/" + std::to_string(ne) + ", threshold " +
                    std::to_string(reduced.threshold) + "/" + std::to_string(k);
  }
  checks.push_back(counts);
  return checks;
}

SmallVerification verify_reduction_small(const X3CInstance& inst, std::uint64_t multiplicity,
                                         const SolverOptions& options) {
  const ReducedInstance reduced = build_reduction(inst, multiplicity);
  SmallVerification out;
  out.threshold = reduced.threshold;
  out.reduced_multiplicity = reduced.reduced_multiplicity;
  out.value = msv_pyro(reduced.graph, reduced.root, 1, options).value;
  out.reaches_threshold = static_cast<std::uint64_t>(out.value) >= reduced.threshold;
  out.cover_exists = exact_cover_exists(inst);
  out.agree = out.reaches_threshold == out.cover_exists;
  if (!out.agree && out.reduced_multiplicity) {
    out.note = "multiplicity too small: the equivalence is only claimed for M = 9q^4";
  } else if (out.reduced_multiplicity) {
    out.note = "reduced multiplicity";
  }
  return out;
}

}  // namespace pyro
