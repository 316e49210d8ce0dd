#include "pyro/topology.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <deque>
#include <stdexcept>

namespace pyro {

namespace {

constexpr std::array<Coord, 4> kCartesianSteps{{{-1, 0}, {0, -1}, {0, 1}, {1, 0}}};
constexpr std::array<Coord, 8> kStrongSteps{
    {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1}}};

}  // namespace

std::ostream& operator<<(std::ostream& os, Coord c) { return os << c.x << ',' << c.y; }

const char* to_string(GridKind kind) {
  return kind == GridKind::cartesian ? "cartesian" : "strong";
}

std::optional<GridKind> parse_grid_kind(std::string_view name) {
  if (name == "cartesian") return GridKind::cartesian;
  if (name == "strong") return GridKind::strong;
  return std::nullopt;
}

int grid_norm(GridKind kind, Coord c) {
  const int ax = std::abs(c.x);
  const int ay = std::abs(c.y);
  return kind == GridKind::cartesian ? ax + ay : std::max(ax, ay);
}

int grid_distance(GridKind kind, Coord a, Coord b) {
  return grid_norm(kind, {b.x - a.x, b.y - a.y});
}

std::span<const Coord> grid_steps(GridKind kind) {
  if (kind == GridKind::cartesian) return kCartesianSteps;
  return kStrongSteps;
}

std::vector<Coord> grid_neighbors(GridKind kind, Coord c) {
  std::vector<Coord> out;
  for (Coord step : grid_steps(kind)) out.push_back(c + step);
  return out;
}

Topology Topology::finite(std::size_t vertex_count,
                          std::span<const std::pair<VertexId, VertexId>> edges,
                          std::vector<std::string> names) {
  if (!names.empty() && names.size() != vertex_count) {
    throw std::invalid_argument("name map size does not match vertex count");
  }
  std::vector<std::vector<VertexId>> adj(vertex_count);
  for (auto [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count) {
      throw std::invalid_argument("edge endpoint out of range: " + std::to_string(u) + " " +
                                  std::to_string(v));
    }
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  Topology t;
  t.kind_ = Kind::finite;
  t.offsets_.assign(1, 0);
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
      throw std::invalid_argument("duplicate edge");
    }
    t.targets_.insert(t.targets_.end(), list.begin(), list.end());
    t.offsets_.push_back(static_cast<std::uint32_t>(t.targets_.size()));
  }
  t.edge_flag_.assign(vertex_count, 0);
  t.names_ = std::move(names);
  return t;
}

Topology Topology::grid(GridKind kind, int window_radius) {
  if (window_radius < 1) throw std::invalid_argument("window radius must be positive");
  Topology t;
  t.kind_ = kind == GridKind::cartesian ? Kind::cartesian : Kind::strong;
  t.window_radius_ = window_radius;
  t.side_ = 2 * window_radius + 1;
  const auto cells = static_cast<std::size_t>(t.side_) * static_cast<std::size_t>(t.side_);
  t.offsets_.reserve(cells + 1);
  t.edge_flag_.assign(cells, 0);
  for (VertexId id = 0; id < cells; ++id) {
    const Coord c = t.coord(id);
    for (Coord step : grid_steps(kind)) {
      if (auto n = t.find(c + step)) {
        t.targets_.push_back(*n);
      } else {
        t.edge_flag_[id] = 1;
      }
    }
    t.offsets_.push_back(static_cast<std::uint32_t>(t.targets_.size()));
  }
  return t;
}

GridKind Topology::grid_kind() const {
  if (kind_ == Kind::finite) throw std::logic_error("finite topology has no grid kind");
  return kind_ == Kind::cartesian ? GridKind::cartesian : GridKind::strong;
}

void Topology::check(VertexId v) const {
  if (v >= size()) throw std::out_of_range("vertex " + std::to_string(v) + " not in topology");
}

std::span<const VertexId> Topology::neighbors(VertexId v) const {
  check(v);
  return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
}

bool Topology::adjacent(VertexId u, VertexId v) const {
  auto n = neighbors(u);
  return std::binary_search(n.begin(), n.end(), v);
}

bool Topology::on_window_edge(VertexId v) const {
  check(v);
  return edge_flag_[v] != 0;
}

std::optional<VertexId> Topology::find(Coord c) const {
  if (!is_grid()) return std::nullopt;
  if (std::abs(c.x) > window_radius_ || std::abs(c.y) > window_radius_) return std::nullopt;
  return static_cast<VertexId>((c.x + window_radius_) * side_ + (c.y + window_radius_));
}

VertexId Topology::at(Coord c) const {
  if (auto id = find(c)) return *id;
  std::string what = "coordinate ";
  what += std::to_string(c.x) + "," + std::to_string(c.y) + " outside window";
  throw std::out_of_range(what);
}

Coord Topology::coord(VertexId v) const {
  if (!is_grid()) throw std::logic_error("finite topology has no coordinates");
  return {static_cast<int>(v) / side_ - window_radius_, static_cast<int>(v) % side_ - window_radius_};
}

int Topology::norm(VertexId v) const { return grid_norm(grid_kind(), coord(v)); }

std::vector<int> Topology::bfs_distances(VertexId source) const {
  check(source);
  std::vector<int> dist(size(), -1);
  std::deque<VertexId> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const VertexId u = queue.front();
    queue.pop_front();
    for (VertexId w : neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::optional<int> Topology::distance(VertexId u, VertexId v) const {
  check(u);
  check(v);
  if (is_grid()) return grid_distance(grid_kind(), coord(u), coord(v));
  const int d = bfs_distances(u)[v];
  if (d < 0) return std::nullopt;
  return d;
}

std::string Topology::name(VertexId v) const {
  check(v);
  if (!names_.empty()) return names_[v];
  if (is_grid()) {
    const Coord c = coord(v);
    return std::to_string(c.x) + "," + std::to_string(c.y);
  }
  return std::to_string(v);
}

std::optional<VertexId> Topology::find_name(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<VertexId>(i);
  }
  return std::nullopt;
}

std::vector<std::pair<VertexId, VertexId>> Topology::edges() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  for (VertexId u = 0; u < size(); ++u) {
    for (VertexId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

}  // namespace pyro
