#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pyro {

using VertexId = std::uint32_t;

/// Lattice coordinate on an infinite grid.
struct Coord {
  int x = 0;
  int y = 0;

  friend constexpr auto operator<=>(const Coord&, const Coord&) = default;
  friend constexpr Coord operator+(Coord a, Coord b) { return {a.x + b.x, a.y + b.y}; }
};

std::ostream& operator<<(std::ostream& os, Coord c);

enum class GridKind { cartesian, strong };

const char* to_string(GridKind kind);
std::optional<GridKind> parse_grid_kind(std::string_view name);

/// L1 norm on the Cartesian grid, L-infinity norm on the strong grid.
int grid_norm(GridKind kind, Coord c);
int grid_distance(GridKind kind, Coord a, Coord b);

/// Neighbors on the infinite lattice: 4 for Cartesian, 8 for strong.
std::vector<Coord> grid_neighbors(GridKind kind, Coord c);

/// Unit steps of the lattice, in a fixed order.
std::span<const Coord> grid_steps(GridKind kind);

/// A graph universe: an explicit finite graph or a square window of an
/// infinite grid centred on the origin. Vertices are dense ids; on grids the
/// id order coincides with lexicographic (x, y) order.
class Topology {
 public:
  enum class Kind { finite, cartesian, strong };

  /// Throws std::invalid_argument on self-loops, duplicate edges or
  /// out-of-range endpoints.
  static Topology finite(std::size_t vertex_count,
                         std::span<const std::pair<VertexId, VertexId>> edges,
                         std::vector<std::string> names = {});

  static Topology grid(GridKind kind, int window_radius);

  Kind kind() const { return kind_; }
  bool is_grid() const { return kind_ != Kind::finite; }
  GridKind grid_kind() const;
  int window_radius() const { return window_radius_; }

  std::size_t size() const { return offsets_.size() - 1; }
  std::size_t edge_count() const { return targets_.size() / 2; }
  bool contains(VertexId v) const { return v < size(); }

  /// Throws std::out_of_range for an invalid id.
  std::span<const VertexId> neighbors(VertexId v) const;
  bool adjacent(VertexId u, VertexId v) const;

  /// True when some lattice neighbor of v lies outside the window.
  bool on_window_edge(VertexId v) const;

  std::optional<VertexId> find(Coord c) const;
  VertexId at(Coord c) const;
  Coord coord(VertexId v) const;
  /// Distance from the origin (grid topologies only).
  int norm(VertexId v) const;

  /// Graph distance; std::nullopt when v is unreachable from u.
  std::optional<int> distance(VertexId u, VertexId v) const;
  std::vector<int> bfs_distances(VertexId source) const;

  bool has_names() const { return !names_.empty(); }
  std::string name(VertexId v) const;
  const std::vector<std::string>& names() const { return names_; }
  std::optional<VertexId> find_name(std::string_view name) const;

  std::vector<std::pair<VertexId, VertexId>> edges() const;

 private:
  Topology() = default;
  void check(VertexId v) const;

  Kind kind_ = Kind::finite;
  int window_radius_ = 0;
  int side_ = 0;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<VertexId> targets_;
  std::vector<std::uint8_t> edge_flag_;
  std::vector<std::string> names_;
};

using TopologyPtr = std::shared_ptr<const Topology>;

}  // namespace pyro
