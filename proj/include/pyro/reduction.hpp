#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pyro/graph_io.hpp"
#include "pyro/solver.hpp"

namespace pyro {

/// Exact cover by 3-sets: ground set {1..3q} and a collection of triples.
struct X3CInstance {
  int q = 1;
  std::vector<std::array<int, 3>> sets;

  int ground_size() const { return 3 * q; }
  /// Throws std::invalid_argument on a bad triple or a duplicate.
  void validate() const;
  friend bool operator==(const X3CInstance&, const X3CInstance&) = default;
};

/// Format: first line 3q, then one triple per line. '#' starts a comment.
X3CInstance read_x3c(std::istream& in);
X3CInstance read_x3c_file(const std::string& path);
void write_x3c(std::ostream& out, const X3CInstance& inst);

/// Instance with q and between 1 and max_sets distinct triples.
X3CInstance random_x3c(std::mt19937_64& rng, int q, int max_sets);

/// Backtracking search; throws BudgetExceeded when 3q > 63.
bool exact_cover_exists(const X3CInstance& inst);

bool disjoint(const std::array<int, 3>& a, const std::array<int, 3>& b);
std::size_t disjoint_pair_count(const X3CInstance& inst);

std::uint64_t default_multiplicity(int q);  // 9 q^4

struct ReducedInstance {
  TopologyPtr graph;  // named vertices: r, L(i,j), c_j, P(i,j,t)
  VertexId root = 0;
  std::uint64_t threshold = 0;
  std::uint64_t multiplicity = 0;
  bool reduced_multiplicity = false;  // M below 9 q^4
  int q = 0;
  std::size_t set_count = 0;
  std::size_t disjoint_pairs = 0;
};

/// Root r, layers 1..q-1 of |C| vertices each, cover vertices c_j at
/// distance q, consecutive layers complete bipartite, and M subdivided edges
/// between c_i and c_j for every disjoint pair. Threshold q + C(q,2) M.
ReducedInstance build_reduction(const X3CInstance& inst,
                                std::optional<std::uint64_t> multiplicity = std::nullopt);

std::uint64_t reduction_vertex_count(int q, std::size_t sets, std::uint64_t m, std::size_t pairs);
std::uint64_t reduction_edge_count(int q, std::size_t sets, std::uint64_t m, std::size_t pairs);
std::uint64_t reduction_threshold(int q, std::uint64_t m);

struct AuditCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

/// Bipartiteness, BFS layer distances, complete layers, subdivided pairs and
/// the closed-form counts.
std::vector<AuditCheck> audit_reduction(const ReducedInstance& reduced, const X3CInstance& inst);

struct SmallVerification {
  int value = 0;  // msv_pyro with one firefighter
  std::uint64_t threshold = 0;
  bool reaches_threshold = false;
  bool cover_exists = false;
  bool agree = false;
  bool reduced_multiplicity = false;
  std::string note;
};

/// Solves the reduced graph exactly and compares value >= threshold with the
/// existence of an exact cover. Throws BudgetExceeded if the graph is too big.
SmallVerification verify_reduction_small(const X3CInstance& inst, std::uint64_t multiplicity,
                                         const SolverOptions& options = {});

}  // namespace pyro
