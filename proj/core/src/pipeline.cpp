#include "mtsp/pipeline.hpp"

#include <cmath>
#include <future>
#include <utility>

#include "mtsp/errors.hpp"

namespace mtsp {
namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

template <typename Fn>
auto in_stage(const char* stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (Error& e) {
    e.add_context(stage);
    throw;
  }
}

std::vector<Tour> solve_tours(const Instance& instance, const AssignmentSolution& assignment) {
  std::vector<std::future<Tour>> pending;
  for (const Vehicle& v : instance.fleet) {
    TspProblem problem = make_tsp_problem(instance, v.id, assignment.points_of(v.id));
    pending.push_back(std::async(std::launch::async, [p = std::move(problem)] { return solve_tsp(p); }));
  }
  std::vector<Tour> tours;
  for (auto& f : pending) tours.push_back(f.get());
  return tours;
}

}  // namespace

std::string_view to_string(MSource source) {
  return source == MSource::kDerived ? "derived" : "paper_override";
}

MSource parse_m_source(std::string_view text) {
  if (text == "derived") return MSource::kDerived;
  if (text == "paper_override") return MSource::kPaperOverride;
  throw Error(ErrorKind::kInvalidQuery, "unknown m-source '" + std::string(text) + "'");
}

Rational Plan::load_mass(int vehicle) const {
  Rational sum;
  for (PointId p : assignment.points_of(vehicle)) sum += instance.demand(p).mass;
  return sum;
}

Rational Plan::load_volume(int vehicle) const {
  Rational sum;
  for (PointId p : assignment.points_of(vehicle)) sum += instance.demand(p).volume;
  return sum;
}

Plan assemble_plan(const Instance& instance, std::string scenario, MSource m_source, Decomposition decomposition,
                   std::vector<MCoefficients> assignment_m, AssignmentSolution assignment, std::vector<Tour> tours) {
  Plan plan;
  plan.scenario = std::move(scenario);
  plan.m_source = m_source;
  plan.instance = instance;
  plan.decomposition = std::move(decomposition);
  plan.assignment_m = std::move(assignment_m);
  plan.assignment = std::move(assignment);
  plan.tours = std::move(tours);

  std::vector<std::vector<Rational>> costs;
  for (const Tour& t : plan.tours) {
    plan.routes.push_back(RouteVector{t.vehicle, tour_to_route_vector(t, instance.path_map)});
    costs.push_back(instance.vehicle(t.vehicle).costs);
  }
  plan.breakdown = in_stage("objective split", [&] {
    return objective_split(plan.routes, plan.decomposition.m, plan.decomposition.partition, costs);
  });
  return plan;
}

Plan run_pipeline(const Instance& base, const Scenario& scenario, MSource m_source,
                  const std::optional<std::vector<std::vector<Rational>>>& m_override) {
  const Instance instance = in_stage("scenario", [&] { return apply_scenario(base, scenario); });
  Decomposition decomposition = in_stage("decomposition", [&] { return decompose(instance); });

  std::vector<MCoefficients> used = decomposition.m;
  if (m_source == MSource::kPaperOverride) {
    if (!m_override) {
      throw Error(ErrorKind::kInvalidQuery, "assignment stage: instance carries no override coefficients");
    }
    if (m_override->size() != idx(instance.vehicles())) {
      throw Error(ErrorKind::kInvalidQuery, "assignment stage: override needs one vector per vehicle");
    }
    for (std::size_t k = 0; k < used.size(); ++k) used[k].values = (*m_override)[k];
  }

  AssignmentSolution assignment = in_stage("assignment", [&] {
    return solve_assignment(make_assignment_problem(instance, used));
  });
  std::vector<Tour> tours = in_stage("routing", [&] { return solve_tours(instance, assignment); });
  return assemble_plan(instance, scenario.name, m_source, std::move(decomposition), std::move(used),
                       std::move(assignment), std::move(tours));
}

Plan run_pipeline(const InstanceDocument& document, std::string_view scenario, MSource m_source) {
  return run_pipeline(document.instance, document.scenario(scenario), m_source, document.m_override);
}

Plan solve_monolithic_oracle(const Instance& base, const Scenario& scenario) {
  const Instance instance = in_stage("scenario", [&] { return apply_scenario(base, scenario); });
  const int n = instance.points;
  const int fleet = instance.vehicles();
  if (std::pow(static_cast<double>(fleet), n - 1) > kMonolithicAssignmentLimit || n > kTspOracleMaxPoints) {
    throw Error(ErrorKind::kOracleLimit, "joint enumeration over " + std::to_string(fleet) + "^" +
                                             std::to_string(n - 1) + " assignments with up to " + std::to_string(n) +
                                             "-point tours exceeds the oracle limit");
  }
  Decomposition decomposition = in_stage("decomposition", [&] { return decompose(instance); });
  const AssignmentProblem problem = make_assignment_problem(instance, decomposition.m);

  // Memoised exhaustive tour cost per (vehicle, subset of points 2..J).
  const std::size_t subsets = std::size_t{1} << (n - 1);
  std::vector<std::vector<std::optional<Tour>>> memo(idx(fleet), std::vector<std::optional<Tour>>(subsets));
  auto tour_for = [&](int k, std::size_t mask) -> const Tour& {
    auto& slot = memo[idx(k)][mask];
    if (!slot) {
      std::vector<PointId> pts;
      for (int b = 0; b < n - 1; ++b) {
        if (mask & (std::size_t{1} << b)) pts.push_back(b + 2);
      }
      slot = oracle_tsp(make_tsp_problem(instance, k + 1, pts));
    }
    return *slot;
  };

  std::vector<int> owners(idx(n - 1), 1);
  std::optional<Rational> best_total;
  std::vector<int> best_owners;
  while (true) {
    std::vector<Rational> mass(idx(fleet));
    std::vector<Rational> volume(idx(fleet));
    std::vector<std::size_t> masks(idx(fleet), 0);
    for (PointId j = 2; j <= n; ++j) {
      const auto k = idx(owners[idx(j - 2)] - 1);
      mass[k] += instance.demand(j).mass;
      volume[k] += instance.demand(j).volume;
      masks[k] |= std::size_t{1} << (j - 2);
    }
    bool ok = true;
    for (int k = 0; k < fleet && ok; ++k) {
      ok = within(mass[idx(k)], instance.fleet[idx(k)].mass_capacity) &&
           within(volume[idx(k)], instance.fleet[idx(k)].volume_capacity);
    }
    if (ok) {
      Rational total;
      for (int k = 0; k < fleet; ++k) total += tour_for(k, masks[idx(k)]).cost;
      if (!best_total || total < *best_total) {
        best_total = total;
        best_owners = owners;
      }
    }
    int pos = n - 2;
    while (pos >= 0 && owners[idx(pos)] == fleet) owners[idx(pos--)] = 1;
    if (pos < 0) break;
    ++owners[idx(pos)];
  }
  if (!best_total) {
    // Same certificate as the assignment stage would give.
    in_stage("oracle", [&] { return oracle_assignment(problem); });
    throw Error(ErrorKind::kInfeasible, "oracle: no feasible assignment");
  }

  AssignmentSolution assignment;
  assignment.vectors = vectors_from_owners(n, fleet, best_owners);
  assignment.objective = assignment_cost(problem, assignment.vectors);
  std::vector<Tour> tours;
  for (int k = 0; k < fleet; ++k) {
    std::size_t mask = 0;
    for (PointId p : assignment.points_of(k + 1)) mask |= std::size_t{1} << (p - 2);
    tours.push_back(tour_for(k, mask));
  }
  std::vector<MCoefficients> used = decomposition.m;
  return assemble_plan(instance, scenario.name, MSource::kDerived, std::move(decomposition), std::move(used),
                       std::move(assignment), std::move(tours));
}

}  // namespace mtsp
