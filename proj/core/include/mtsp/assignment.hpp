#pragma once

// Point-to-vehicle assignment: minimise sum_k M_k . P_k subject to per-vehicle
// mass and volume limits, every non-depot point on exactly one vehicle, and
// the depot on every vehicle.

#include <span>
#include <string>
#include <vector>

#include "mtsp/decomposition.hpp"
#include "mtsp/instance.hpp"
#include "mtsp/rational.hpp"

namespace mtsp {

struct AssignmentProblem {
  int points = 0;
  /// coefficients[k][j - 1] is vehicle k+1's cost for visiting point j; the
  /// depot entry is ignored.
  std::vector<std::vector<Rational>> coefficients;
  std::vector<Demand> demands;  // index: point - 1
  std::vector<Capacity> mass_capacity;
  std::vector<Capacity> volume_capacity;

  int vehicles() const noexcept { return static_cast<int>(coefficients.size()); }
  void validate() const;
};

AssignmentProblem make_assignment_problem(const Instance& instance, std::span<const MCoefficients> m);

struct AssignmentVector {
  int vehicle = 0;
  std::vector<int> p;  // 0/1, index: point - 1; p[0] == 1
};

struct AssignmentSolution {
  std::vector<AssignmentVector> vectors;
  Rational objective;

  /// owner[j - 1] = vehicle serving point j (0 for the depot).
  std::vector<int> owners() const;
  /// Non-depot points of `vehicle`, ascending.
  std::vector<PointId> points_of(int vehicle) const;
};

/// Builds per-vehicle vectors from an owner list over points 2..J.
std::vector<AssignmentVector> vectors_from_owners(int points, int vehicles, std::span<const int> owners);

struct Violation {
  enum class Kind { kMass, kVolume, kCoverage, kDepot, kShape };
  Kind kind = Kind::kShape;
  int vehicle = 0;  // for capacity / depot violations
  PointId point = 0;  // for coverage violations
  std::string detail;
};

struct FeasibilityVerdict {
  std::vector<Violation> violations;
  bool feasible() const noexcept { return violations.empty(); }
};

FeasibilityVerdict check_feasible(const AssignmentProblem& problem, std::span<const AssignmentVector> vectors);

/// sum_k sum_{j >= 2} M_k[j] p_k[j].
Rational assignment_cost(const AssignmentProblem& problem, std::span<const AssignmentVector> vectors);

/// Depth-first branch and bound. Points are branched in descending mass order
/// (ties by id), vehicles tried in ascending id order; the bound adds, for
/// every open point, its cheapest coefficient over all vehicles. Among optimal
/// assignments the one with the lexicographically smallest owner string
/// (vehicle of point 2, then point 3, ...) is returned. Throws
/// InfeasibleError when no assignment fits.
AssignmentSolution solve_assignment(const AssignmentProblem& problem);

inline constexpr double kAssignmentOracleLimit = 1e7;

/// Exhaustive enumeration of all K^(J-1) owner strings with the same
/// tie-break. Throws oracle-limit beyond kAssignmentOracleLimit candidates.
AssignmentSolution oracle_assignment(const AssignmentProblem& problem);

}  // namespace mtsp
