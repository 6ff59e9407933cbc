#pragma once

// Single-vehicle closed tours over an assigned point set.

#include <span>
#include <string>
#include <vector>

#include "mtsp/exact_matrix.hpp"
#include "mtsp/instance.hpp"
#include "mtsp/rational.hpp"

namespace mtsp {

/// A vehicle's routing subproblem. `points` is ascending and starts with the
/// depot; `costs(a, b)` is the symmetric cost between points[a] and points[b].
struct TspProblem {
  int vehicle = 0;
  std::vector<PointId> points;
  RationalMatrix costs;

  int size() const noexcept { return static_cast<int>(points.size()); }
};

/// Extracts vehicle `vehicle`'s costs over `points` (the depot is added if
/// missing).
TspProblem make_tsp_problem(const Instance& instance, int vehicle, std::span<const PointId> points);

struct Tour {
  int vehicle = 0;
  /// Depot-first and depot-last, e.g. 1-7-11-10-1. A depot-only tour is the
  /// single element {1}.
  std::vector<PointId> sequence;
  Rational cost;
};

/// Sum of consecutive pair costs. Throws invalid-tour unless the sequence is
/// a closed walk from the depot visiting every problem point exactly once.
Rational tour_cost(const TspProblem& problem, std::span<const PointId> sequence);

/// Reverses a closed sequence if needed so that its second element is smaller
/// than its second-to-last.
std::vector<PointId> canonical_direction(std::vector<PointId> sequence);

/// Depth-first branch and bound. Children are explored by ascending edge
/// cost, then point id. The bound adds, for the remaining path, half the sum
/// of each open endpoint's cheapest admissible incident edges. Among optimal
/// tours the lexicographically smallest canonical sequence is returned.
Tour solve_tsp(const TspProblem& problem);

/// The branch-and-bound lower bound at the root (depot only on the path).
Rational tsp_root_bound(const TspProblem& problem);

inline constexpr int kTspOracleMaxPoints = 11;

/// Exhaustive enumeration of every distinct closed tour, same tie-break as
/// solve_tsp. Throws oracle-limit above kTspOracleMaxPoints points.
Tour oracle_tsp(const TspProblem& problem);

/// Path multiplicities of a tour: 1 on each traversed path, 2 on {1, j} for
/// the out-and-back tour 1-j-1, 0 elsewhere.
std::vector<int> tour_to_route_vector(const Tour& tour, const PathIndexMap& map);

std::string format_sequence(std::span<const PointId> sequence);

}  // namespace mtsp
