#include "mtsp/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "mtsp/errors.hpp"

namespace mtsp {
namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

std::optional<Rational> total_capacity(const std::vector<Capacity>& caps) {
  Rational sum;
  for (const auto& c : caps) {
    if (!c) return std::nullopt;
    sum += *c;
  }
  return sum;
}

// Raises InfeasibleError for the cheap-to-prove cases; packing infeasibility
// is only discovered by the search itself.
void precheck_capacity(const AssignmentProblem& problem) {
  Rational mass;
  Rational volume;
  for (PointId j = 2; j <= problem.points; ++j) {
    mass += problem.demands[idx(j - 1)].mass;
    volume += problem.demands[idx(j - 1)].volume;
  }
  auto aggregate = [](const Rational& demand, const std::optional<Rational>& cap, const char* resource) {
    if (cap && demand > *cap) {
      InfeasibilityCertificate cert{InfeasibilityCertificate::Reason::kAggregateShortfall, resource, 0};
      throw InfeasibleError(cert, std::string("total ") + resource + " demand " + demand.to_decimal() +
                                      " exceeds fleet " + resource + " capacity " + cap->to_decimal());
    }
  };
  aggregate(mass, total_capacity(problem.mass_capacity), "mass");
  aggregate(volume, total_capacity(problem.volume_capacity), "volume");

  for (PointId j = 2; j <= problem.points; ++j) {
    const Demand& d = problem.demands[idx(j - 1)];
    bool fits_somewhere = false;
    for (int k = 0; k < problem.vehicles() && !fits_somewhere; ++k) {
      fits_somewhere = within(d.mass, problem.mass_capacity[idx(k)]) && within(d.volume, problem.volume_capacity[idx(k)]);
    }
    if (!fits_somewhere) {
      bool mass_ok = false;
      for (const auto& c : problem.mass_capacity) mass_ok = mass_ok || within(d.mass, c);
      InfeasibilityCertificate cert{InfeasibilityCertificate::Reason::kOversizedPoint, mass_ok ? "volume" : "mass", j};
      throw InfeasibleError(cert, "point " + std::to_string(j) + " fits no vehicle on its own");
    }
  }
}

[[noreturn]] void throw_packing_infeasible() {
  throw InfeasibleError(InfeasibilityCertificate{InfeasibilityCertificate::Reason::kPacking, "", 0},
                        "demands fit the fleet in total but admit no packing");
}

AssignmentSolution make_solution(const AssignmentProblem& problem, std::span<const int> owners) {
  AssignmentSolution s;
  s.vectors = vectors_from_owners(problem.points, problem.vehicles(), owners);
  s.objective = assignment_cost(problem, s.vectors);
  return s;
}

// Lexicographic comparison of (cost, owner string).
bool better(const Rational& cost, std::span<const int> owners, const std::optional<Rational>& best_cost,
            std::span<const int> best_owners) {
  if (!best_cost) return true;
  if (cost != *best_cost) return cost < *best_cost;
  return std::lexicographical_compare(owners.begin(), owners.end(), best_owners.begin(), best_owners.end());
}

}  // namespace

void AssignmentProblem::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::kInvalidQuery, "assignment problem: " + msg); };
  if (points < 2) fail("needs at least 2 points");
  if (coefficients.empty()) fail("needs at least one vehicle");
  if (static_cast<int>(demands.size()) != points) fail("demand vector length");
  if (static_cast<int>(mass_capacity.size()) != vehicles() || static_cast<int>(volume_capacity.size()) != vehicles()) {
    fail("capacity vector length");
  }
  for (const auto& c : coefficients) {
    if (static_cast<int>(c.size()) != points) fail("coefficient vector length");
  }
}

AssignmentProblem make_assignment_problem(const Instance& instance, std::span<const MCoefficients> m) {
  if (static_cast<int>(m.size()) != instance.vehicles()) {
    throw Error(ErrorKind::kInvalidQuery, "need one coefficient vector per vehicle");
  }
  AssignmentProblem problem;
  problem.points = instance.points;
  problem.demands = instance.demands;
  for (std::size_t k = 0; k < m.size(); ++k) {
    problem.coefficients.push_back(m[k].values);
    problem.mass_capacity.push_back(instance.fleet[k].mass_capacity);
    problem.volume_capacity.push_back(instance.fleet[k].volume_capacity);
  }
  problem.validate();
  return problem;
}

std::vector<int> AssignmentSolution::owners() const {
  if (vectors.empty()) return {};
  std::vector<int> out(vectors.front().p.size(), 0);
  for (const auto& v : vectors) {
    for (std::size_t j = 1; j < v.p.size(); ++j) {
      if (v.p[j]) out[j] = v.vehicle;
    }
  }
  return out;
}

std::vector<PointId> AssignmentSolution::points_of(int vehicle) const {
  std::vector<PointId> out;
  for (const auto& v : vectors) {
    if (v.vehicle != vehicle) continue;
    for (std::size_t j = 1; j < v.p.size(); ++j) {
      if (v.p[j]) out.push_back(static_cast<PointId>(j + 1));
    }
  }
  return out;
}

std::vector<AssignmentVector> vectors_from_owners(int points, int vehicles, std::span<const int> owners) {
  if (static_cast<int>(owners.size()) != points - 1) {
    throw Error(ErrorKind::kInvalidQuery, "owner list must cover points 2..J");
  }
  std::vector<AssignmentVector> out;
  for (int k = 1; k <= vehicles; ++k) {
    AssignmentVector v{k, std::vector<int>(idx(points), 0)};
    v.p[0] = 1;
    out.push_back(std::move(v));
  }
  for (std::size_t j = 0; j < owners.size(); ++j) {
    const int k = owners[j];
    if (k < 1 || k > vehicles) throw Error(ErrorKind::kInvalidQuery, "owner vehicle out of range");
    out[idx(k - 1)].p[j + 1] = 1;
  }
  return out;
}

FeasibilityVerdict check_feasible(const AssignmentProblem& problem, std::span<const AssignmentVector> vectors) {
  FeasibilityVerdict verdict;
  if (static_cast<int>(vectors.size()) != problem.vehicles()) {
    verdict.violations.push_back({Violation::Kind::kShape, 0, 0, "expected one vector per vehicle"});
    return verdict;
  }
  for (const auto& v : vectors) {
    if (static_cast<int>(v.p.size()) != problem.points || v.vehicle < 1 || v.vehicle > problem.vehicles()) {
      verdict.violations.push_back({Violation::Kind::kShape, v.vehicle, 0, "malformed visit vector"});
      return verdict;
    }
  }
  for (const auto& v : vectors) {
    if (v.p[0] != 1) {
      verdict.violations.push_back({Violation::Kind::kDepot, v.vehicle, kDepot, "depot not on vehicle"});
    }
  }
  for (PointId j = 2; j <= problem.points; ++j) {
    int visits = 0;
    for (const auto& v : vectors) visits += v.p[idx(j - 1)] != 0;
    if (visits != 1) {
      verdict.violations.push_back({Violation::Kind::kCoverage, 0, j,
                                    "point visited by " + std::to_string(visits) + " vehicles"});
    }
  }
  for (const auto& v : vectors) {
    Rational mass;
    Rational volume;
    for (PointId j = 1; j <= problem.points; ++j) {
      if (!v.p[idx(j - 1)]) continue;
      mass += problem.demands[idx(j - 1)].mass;
      volume += problem.demands[idx(j - 1)].volume;
    }
    const auto k = idx(v.vehicle - 1);
    if (!within(mass, problem.mass_capacity[k])) {
      verdict.violations.push_back({Violation::Kind::kMass, v.vehicle, 0,
                                    "mass " + mass.to_decimal() + " > " + problem.mass_capacity[k]->to_decimal()});
    }
    if (!within(volume, problem.volume_capacity[k])) {
      verdict.violations.push_back({Violation::Kind::kVolume, v.vehicle, 0,
                                    "volume " + volume.to_decimal() + " > " + problem.volume_capacity[k]->to_decimal()});
    }
  }
  return verdict;
}

Rational assignment_cost(const AssignmentProblem& problem, std::span<const AssignmentVector> vectors) {
  Rational cost;
  for (const auto& v : vectors) {
    const auto& coeff = problem.coefficients.at(idx(v.vehicle - 1));
    for (std::size_t j = 1; j < v.p.size(); ++j) {
      if (v.p[j]) cost += coeff[j];
    }
  }
  return cost;
}

AssignmentSolution solve_assignment(const AssignmentProblem& problem) {
  problem.validate();
  precheck_capacity(problem);
  const int n = problem.points;
  const int fleet = problem.vehicles();

  std::vector<PointId> order;
  for (PointId j = 2; j <= n; ++j) order.push_back(j);
  std::stable_sort(order.begin(), order.end(), [&](PointId a, PointId b) {
    return problem.demands[idx(a - 1)].mass > problem.demands[idx(b - 1)].mass;
  });

  // open_bound[d] = sum over order[d..] of the cheapest coefficient.
  std::vector<Rational> open_bound(order.size() + 1);
  for (std::size_t d = order.size(); d-- > 0;) {
    Rational best = problem.coefficients[0][idx(order[d] - 1)];
    for (int k = 1; k < fleet; ++k) best = std::min(best, problem.coefficients[idx(k)][idx(order[d] - 1)]);
    open_bound[d] = open_bound[d + 1] + best;
  }

  std::vector<Rational> mass_load(idx(fleet));
  std::vector<Rational> volume_load(idx(fleet));
  std::vector<int> owners(idx(n - 1), 0);  // by point id - 2
  std::optional<Rational> best_cost;
  std::vector<int> best_owners;

  auto search = [&](auto&& self, std::size_t depth, const Rational& committed) -> void {
    if (best_cost && committed + open_bound[depth] > *best_cost) return;
    if (depth == order.size()) {
      if (better(committed, owners, best_cost, best_owners)) {
        best_cost = committed;
        best_owners = owners;
      }
      return;
    }
    const PointId j = order[depth];
    const Demand& d = problem.demands[idx(j - 1)];
    for (int k = 0; k < fleet; ++k) {
      Rational mass = mass_load[idx(k)] + d.mass;
      Rational volume = volume_load[idx(k)] + d.volume;
      if (!within(mass, problem.mass_capacity[idx(k)]) || !within(volume, problem.volume_capacity[idx(k)])) continue;
      std::swap(mass_load[idx(k)], mass);
      std::swap(volume_load[idx(k)], volume);
      owners[idx(j - 2)] = k + 1;
      self(self, depth + 1, committed + problem.coefficients[idx(k)][idx(j - 1)]);
      owners[idx(j - 2)] = 0;
      std::swap(mass_load[idx(k)], mass);
      std::swap(volume_load[idx(k)], volume);
    }
  };
  search(search, 0, Rational(0));

  if (!best_cost) throw_packing_infeasible();
  return make_solution(problem, best_owners);
}

AssignmentSolution oracle_assignment(const AssignmentProblem& problem) {
  problem.validate();
  const int n = problem.points;
  const int fleet = problem.vehicles();
  if (std::pow(static_cast<double>(fleet), n - 1) > kAssignmentOracleLimit) {
    throw Error(ErrorKind::kOracleLimit, std::to_string(fleet) + "^" + std::to_string(n - 1) +
                                             " assignments exceed the enumeration limit");
  }
  std::vector<int> owners(idx(n - 1), 1);
  std::optional<Rational> best_cost;
  std::vector<int> best_owners;
  // Odometer in lexicographic order, point 2 most significant, so the first
  // minimum found is the tie-break winner.
  while (true) {
    std::vector<Rational> mass(idx(fleet));
    std::vector<Rational> volume(idx(fleet));
    Rational cost;
    for (PointId j = 2; j <= n; ++j) {
      const auto k = idx(owners[idx(j - 2)] - 1);
      mass[k] += problem.demands[idx(j - 1)].mass;
      volume[k] += problem.demands[idx(j - 1)].volume;
      cost += problem.coefficients[k][idx(j - 1)];
    }
    bool ok = true;
    for (int k = 0; k < fleet && ok; ++k) {
      ok = within(mass[idx(k)], problem.mass_capacity[idx(k)]) && within(volume[idx(k)], problem.volume_capacity[idx(k)]);
    }
    if (ok && (!best_cost || cost < *best_cost)) {
      best_cost = cost;
      best_owners = owners;
    }
    int pos = n - 2;
    while (pos >= 0 && owners[idx(pos)] == fleet) owners[idx(pos--)] = 1;
    if (pos < 0) break;
    ++owners[idx(pos)];
  }
  if (!best_cost) {
    // Reuse the certificate logic so the oracle reports the same reason.
    precheck_capacity(problem);
    throw_packing_infeasible();
  }
  return make_solution(problem, best_owners);
}

}  // namespace mtsp
