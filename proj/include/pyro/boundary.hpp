#pragma once

#include <vector>

#include "pyro/topology.hpp"

namespace pyro {

/// Radii at which the containment theorems hold. Other radii scale the
/// T-set band proportionally and are experimental.
inline constexpr int kCartesianRadius = 48;
inline constexpr int kStrongRadius = 29;

/// Vertices at distance exactly `radius` from the origin, clockwise: starting
/// at (0, R) on the Cartesian grid and at (R, R) on the strong grid.
std::vector<Coord> sphere(GridKind kind, int radius);

/// Width of the T-set band: 5 at radius 48 (Cartesian), 6 at radius 29 (strong).
int t_band(GridKind kind, int radius);

bool in_t_cartesian(Coord c, int radius = kCartesianRadius);
bool in_t_strong(Coord c, int radius = kStrongRadius);
bool in_t_set(GridKind kind, Coord c, int radius);

/// T in clockwise sphere order.
std::vector<Coord> t_set_cartesian(int radius = kCartesianRadius);
std::vector<Coord> t_set_strong(int radius = kStrongRadius);

struct BoundarySets {
  GridKind kind = GridKind::cartesian;
  int radius = 0;
  std::vector<Coord> sphere;           // clockwise
  std::vector<Coord> initial_targets;  // T, clockwise
  std::vector<Coord> remainder;        // sphere \ T, clockwise
  bool experimental = false;           // radius differs from the theorem radius
};

BoundarySets boundary_sets(GridKind kind, int radius);

/// Sphere vertices nearest to a source strictly inside the Cartesian sphere.
struct ThreatSet {
  Coord source;
  int gap = 0;                  // distance from source to the sphere
  std::vector<Coord> members;   // sorted by (x, y)
  std::vector<Coord> centers;   // middle member(s) by x, or by y when the arc crosses the x-axis
};

/// Throws std::invalid_argument when `source` is not strictly inside.
ThreatSet threat_set(Coord source, int radius = kCartesianRadius);

/// Members of `candidates` ordered by L1 distance to the nearest of
/// `anchors`, ties broken lexicographically.
std::vector<Coord> order_by_closeness(std::vector<Coord> candidates,
                                      const std::vector<Coord>& anchors);

}  // namespace pyro
