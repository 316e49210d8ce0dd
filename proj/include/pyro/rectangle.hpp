#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pyro/topology.hpp"

namespace pyro {

using CellSet = std::set<Coord>;

/// Protected rectangle with rows y = l1 and y = -l2 and columns x = -k2 and
/// x = k1 around the origin.
struct RectangleParams {
  int k1 = 0;
  int l1 = 0;
  int k2 = 0;
  int l2 = 0;

  /// k2 >= k1, l2 >= l1, l1 >= k1, all non-negative.
  bool normalized() const;
  friend bool operator==(const RectangleParams&, const RectangleParams&) = default;
};

struct InfeasibilityWitness {
  enum class Case { short_top, narrow };  // l1 <= k2, and k2 < l1

  bool infeasible = false;
  Case which = Case::short_top;
  int step = 0;            // the step by which `required` protections are due
  long long required = 0;  // short_top: 3*l1 + k1 + 1; narrow: 4*k2 + 2
  long long capacity = 0;  // f * step
  std::string inequality() const;
};

/// Counting argument against a rectangle of protected cells on the strong
/// grid under classic spread with f protections per step. Throws
/// std::invalid_argument for non-normalized parameters.
InfeasibilityWitness rectangle_infeasible(const RectangleParams& p, int f);

/// Cells reachable from `burned` on the strong grid without entering
/// `barrier`. Returns nullopt if the flood leaves the box `window` cells
/// beyond the bounding box of barrier and burned.
std::optional<CellSet> flood_region(const CellSet& burned, const CellSet& barrier, int window = 2);

bool is_rectangle_perimeter(const CellSet& cells);
/// Parameters of a rectangle perimeter enclosing the origin.
std::optional<RectangleParams> rectangle_of(const CellSet& cells);

struct PopResult {
  CellSet protected_set;
  CellSet region;  // cells the fire reaches behind the protected set
  int pops = 0;
  int pruned = 0;
};

/// Protected cells with no unprotected saved neighbour.
CellSet redundant_cells(const CellSet& protected_set, const CellSet& region);

/// Repeatedly replaces a protected corner (x,y) whose two orthogonal
/// protected neighbours (x+dx,y) and (x,y+dy) frame an unprotected saved
/// diagonal (x+dx,y+dy) by that diagonal, until no corner applies. A corner
/// is popped only if every other neighbour of (x,y) lies in the region or
/// the protected set. A pop keeps the cardinality but can leave a cell
/// without a saved neighbour when it fills a dent; with `prune` such cells
/// are handed to the fire as they appear. Throws std::invalid_argument if
/// `protected_set` does not contain `burned`, std::runtime_error if the
/// iteration cap is hit.
PopResult pop_corners(const CellSet& protected_set, const CellSet& burned, bool prune = false);

/// Random burned blob within distance `radius` of the origin together with a
/// containing set in which every cell touches an unprotected saved cell.
/// `minimum` first fills the blob to its orthogonally convex hull, which
/// gives a containing set of least cardinality; `dented` keeps the blob's
/// concavities.
enum class CurveShape { minimum, dented };
struct ContainingCurve {
  CellSet burned;
  CellSet protected_set;
};
ContainingCurve random_containing_curve(std::mt19937_64& rng, int radius,
                                        CurveShape shape = CurveShape::minimum);

/// Four protections per step against classic spread on the strong grid.
struct BoxSchedule {
  RectangleParams rectangle;
  std::vector<std::vector<Coord>> rounds;  // rounds[t-1] protected at round t

  std::size_t protections() const;
  friend bool operator==(const BoxSchedule&, const BoxSchedule&) = default;
};

/// The frozen schedule.
const BoxSchedule& box_strategy_4ff();

/// Smallest rectangle perimeter (then smallest last deadline, then
/// lexicographic extents) that `f` protections per step can complete before
/// the fire arrives, scheduled earliest deadline first. Deadlines are the
/// distance from the origin.
std::optional<BoxSchedule> search_box_schedule(int f, int max_round, int max_extent = 12);

struct BoxSimulation {
  bool contained = false;
  int round = 0;  // round after which the fire had no move, or the last round simulated
  std::size_t protections = 0;
  std::size_t burned = 0;
  std::string failure;  // non-empty when a scheduled protection was illegal
};

/// Plays the schedule against classic spread from the origin.
BoxSimulation simulate_box(const BoxSchedule& schedule, int firefighters = 4, int max_rounds = 20);

}  // namespace pyro
