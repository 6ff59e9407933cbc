#pragma once

// decompose -> assign -> route, plus the joint brute-force comparator.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mtsp/assignment.hpp"
#include "mtsp/decomposition.hpp"
#include "mtsp/document.hpp"
#include "mtsp/instance.hpp"
#include "mtsp/router.hpp"

namespace mtsp {

enum class MSource {
  kDerived,        // M_k = 2 T^A_k (Pi^A)^-1
  kPaperOverride,  // coefficients supplied by the instance document
};

std::string_view to_string(MSource source);
/// Accepts "derived" and "paper_override".
MSource parse_m_source(std::string_view text);

struct Plan {
  std::string scenario;
  MSource m_source = MSource::kDerived;
  Instance instance;             // with scenario overrides applied
  Decomposition decomposition;   // partition and derived M
  std::vector<MCoefficients> assignment_m;  // coefficients the assignment used
  AssignmentSolution assignment;
  std::vector<Tour> tours;           // tours[k] for vehicle k + 1
  std::vector<RouteVector> routes;   // routes[k] for vehicle k + 1
  ObjectiveBreakdown breakdown;      // split with derived M

  Rational load_mass(int vehicle) const;
  Rational load_volume(int vehicle) const;
};

/// Runs the full method on `instance` under `scenario`. With
/// MSource::kPaperOverride, `m_override` must hold one length-J vector per
/// vehicle. Per-vehicle tours are solved concurrently. Errors propagate with
/// the failing stage prefixed to their message.
Plan run_pipeline(const Instance& instance, const Scenario& scenario, MSource m_source,
                  const std::optional<std::vector<std::vector<Rational>>>& m_override = std::nullopt);

Plan run_pipeline(const InstanceDocument& document, std::string_view scenario, MSource m_source);

inline constexpr double kMonolithicAssignmentLimit = 1e7;

/// True optimum of the joint problem: every feasible assignment, each vehicle
/// routed by exhaustive tour enumeration (memoised per vehicle and point set).
/// Ties go to the lexicographically smallest owner string. Throws
/// oracle-limit when K^(J-1) exceeds kMonolithicAssignmentLimit or J exceeds
/// the tour enumeration limit.
Plan solve_monolithic_oracle(const Instance& instance, const Scenario& scenario);

/// Assembles a plan from fixed owners and tours; exposed for tests and the
/// comparator.
Plan assemble_plan(const Instance& instance, std::string scenario, MSource m_source, Decomposition decomposition,
                   std::vector<MCoefficients> assignment_m, AssignmentSolution assignment, std::vector<Tour> tours);

}  // namespace mtsp
