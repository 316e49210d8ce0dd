#include "pyro/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <set>
#include <stdexcept>

namespace pyro {

std::vector<Coord> sphere(GridKind kind, int radius) {
  if (radius < 1) throw std::invalid_argument("sphere radius must be positive");
  const int r = radius;
  std::vector<Coord> out;
  if (kind == GridKind::cartesian) {
    out.reserve(4 * static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) out.push_back({i, r - i});
    for (int i = 0; i < r; ++i) out.push_back({r - i, -i});
    for (int i = 0; i < r; ++i) out.push_back({-i, -(r - i)});
    for (int i = 0; i < r; ++i) out.push_back({-(r - i), i});
  } else {
    out.reserve(8 * static_cast<std::size_t>(r));
    for (int i = 0; i < 2 * r; ++i) out.push_back({r, r - i});
    for (int i = 0; i < 2 * r; ++i) out.push_back({r - i, -r});
    for (int i = 0; i < 2 * r; ++i) out.push_back({-r, -r + i});
    for (int i = 0; i < 2 * r; ++i) out.push_back({-r + i, r});
  }
  return out;
}

int t_band(GridKind kind, int radius) {
  const double scaled = kind == GridKind::cartesian ? 5.0 * radius / kCartesianRadius
                                                    : 6.0 * radius / kStrongRadius;
  return static_cast<int>(std::lround(scaled));
}

bool in_t_cartesian(Coord c, int radius) {
  if (grid_norm(GridKind::cartesian, c) != radius) return false;
  const int w = t_band(GridKind::cartesian, radius);
  const int ax = std::abs(c.x);
  const int ay = std::abs(c.y);
  return (ax <= w && ay >= radius - w) || (ay <= w && ax >= radius - w);
}

bool in_t_strong(Coord c, int radius) {
  if (grid_norm(GridKind::strong, c) != radius) return false;
  const int lo = radius - t_band(GridKind::strong, radius);
  if (std::abs(c.x) == radius && std::abs(c.y) >= lo) return true;
  // Second clause with the sign of the negative branch restored:
  // (lo <= x < R) or (-R < x <= -lo).
  return std::abs(c.y) == radius && ((lo <= c.x && c.x < radius) || (-radius < c.x && c.x <= -lo));
}

bool in_t_set(GridKind kind, Coord c, int radius) {
  return kind == GridKind::cartesian ? in_t_cartesian(c, radius) : in_t_strong(c, radius);
}

std::vector<Coord> t_set_cartesian(int radius) {
  std::vector<Coord> out;
  for (Coord c : sphere(GridKind::cartesian, radius)) {
    if (in_t_cartesian(c, radius)) out.push_back(c);
  }
  return out;
}

std::vector<Coord> t_set_strong(int radius) {
  std::vector<Coord> out;
  for (Coord c : sphere(GridKind::strong, radius)) {
    if (in_t_strong(c, radius)) out.push_back(c);
  }
  return out;
}

BoundarySets boundary_sets(GridKind kind, int radius) {
  BoundarySets b;
  b.kind = kind;
  b.radius = radius;
  b.sphere = sphere(kind, radius);
  for (Coord c : b.sphere) {
    (in_t_set(kind, c, radius) ? b.initial_targets : b.remainder).push_back(c);
  }
  b.experimental = radius != (kind == GridKind::cartesian ? kCartesianRadius : kStrongRadius);
  return b;
}

ThreatSet threat_set(Coord source, int radius) {
  const int n = grid_norm(GridKind::cartesian, source);
  if (n >= radius) throw std::invalid_argument("threat set source must lie strictly inside the sphere");
  ThreatSet th;
  th.source = source;
  th.gap = radius - n;
  const int d = th.gap;
  for (int dx = -d; dx <= d; ++dx) {
    const int rest = d - std::abs(dx);
    for (int dy : {rest, -rest}) {
      const Coord c{source.x + dx, source.y + dy};
      if (grid_norm(GridKind::cartesian, c) == radius) th.members.push_back(c);
      if (rest == 0) break;
    }
  }
  std::sort(th.members.begin(), th.members.end());
  th.members.erase(std::unique(th.members.begin(), th.members.end()), th.members.end());
  // Median x. An arc across the x-axis repeats x-coordinates; there the
  // median y plays the same role.
  std::vector<Coord> arc = th.members;
  const auto distinct = [&](auto key) {
    std::set<int> seen;
    for (Coord c : arc) {
      if (!seen.insert(key(c)).second) return false;
    }
    return true;
  };
  if (!distinct([](Coord c) { return c.x; }) && distinct([](Coord c) { return c.y; })) {
    std::sort(arc.begin(), arc.end(), [](Coord a, Coord b) { return a.y != b.y ? a.y < b.y : a.x < b.x; });
  }
  const std::size_t m = arc.size();
  if (m % 2 == 1) {
    th.centers.push_back(arc[m / 2]);
  } else {
    th.centers.push_back(arc[m / 2 - 1]);
    th.centers.push_back(arc[m / 2]);
  }
  std::sort(th.centers.begin(), th.centers.end());
  return th;
}

std::vector<Coord> order_by_closeness(std::vector<Coord> candidates,
                                      const std::vector<Coord>& anchors) {
  const auto closeness = [&](Coord c) {
    int best = std::numeric_limits<int>::max();
    for (Coord a : anchors) best = std::min(best, grid_distance(GridKind::cartesian, c, a));
    return best;
  };
  std::sort(candidates.begin(), candidates.end(), [&](Coord a, Coord b) {
    const int da = closeness(a);
    const int db = closeness(b);
    return da != db ? da < db : a < b;
  });
  return candidates;
}

}  // namespace pyro
