// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance                 run every criterion
//   acceptance --criterion N   run criterion N only
//
// All value checks are exact (rational arithmetic); the only tolerances are
// the wall-clock budgets pinned in kCriteria below.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"
#include "mtsp/mtsp.hpp"
#include "test_support.hpp"

using namespace mtsp;
namespace t = mtsp::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  // Records a failure; the first few are kept in the detail line.
  void fail(const std::string& why) {
    if (failures < 6) detail += (ok ? "" : "; ") + why;
    ok = false;
    ++failures;
  }
  int failures = 0;
};

using Sets = std::vector<std::vector<PointId>>;

std::string format_sets(const Sets& sets) {
  std::string out;
  for (const auto& s : sets) {
    if (!out.empty()) out += " / ";
    out += "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    out += "}";
  }
  return out;
}

Sets partitions(const AssignmentSolution& s, int vehicles) {
  Sets out;
  for (int k = 1; k <= vehicles; ++k) out.push_back(s.points_of(k));
  return out;
}

std::vector<PointId> with_depot(std::vector<PointId> points) {
  points.insert(points.begin(), kDepot);
  return points;
}

const LedgerEntry* ledger_row(const std::vector<LedgerEntry>& ledger, const std::string& claim) {
  for (const LedgerEntry& e : ledger) {
    if (e.claim == claim) return &e;
  }
  return nullptr;
}

AssignmentProblem assignment_problem_of(const Plan& plan) {
  return make_assignment_problem(plan.instance, plan.assignment_m);
}

// Checks every tour of a plan against the exhaustive TSP oracle.
void check_tours_against_oracle(const Plan& plan, Outcome& o) {
  for (std::size_t k = 0; k < plan.tours.size(); ++k) {
    const int vehicle = static_cast<int>(k) + 1;
    const auto pts = with_depot(plan.assignment.points_of(vehicle));
    const Tour oracle = oracle_tsp(make_tsp_problem(plan.instance, vehicle, pts));
    if (oracle.cost != plan.tours[k].cost || oracle.sequence != plan.tours[k].sequence) {
      o.fail("vehicle " + std::to_string(vehicle) + " tour " + format_sequence(plan.tours[k].sequence) +
             " differs from oracle " + format_sequence(oracle.sequence));
    }
  }
}

AssignmentProblem random_assignment_problem(t::Rng& rng) {
  AssignmentProblem p;
  p.points = t::uniform(rng, 2, 10);
  const int vehicles = t::uniform(rng, 1, 3);
  // Tightness from 1.0 (tight) to 2.0 (loose); 0 = uncapacitated.
  const int tight_step = t::uniform(rng, 0, 4);
  p.demands.assign(static_cast<std::size_t>(p.points), Demand{});
  Rational mass;
  Rational volume;
  for (int j = 1; j < p.points; ++j) {
    p.demands[static_cast<std::size_t>(j)] = Demand{t::random_rational(rng, 12), t::random_rational(rng, 12)};
    mass += p.demands[static_cast<std::size_t>(j)].mass;
    volume += p.demands[static_cast<std::size_t>(j)].volume;
  }
  for (int k = 0; k < vehicles; ++k) {
    std::vector<Rational> c(static_cast<std::size_t>(p.points));
    for (auto& v : c) v = t::random_rational(rng, 40);
    p.coefficients.push_back(std::move(c));
    if (tight_step == 0) {
      p.mass_capacity.emplace_back();
      p.volume_capacity.emplace_back();
    } else {
      const Rational share = Rational(3 + tight_step, 4) / Rational(vehicles);
      p.mass_capacity.emplace_back(mass * share + Rational(t::uniform(rng, 0, 4)));
      p.volume_capacity.emplace_back(volume * share + Rational(t::uniform(rng, 0, 4)));
    }
  }
  p.validate();
  return p;
}

// ---------------------------------------------------------------------------
// Criteria

Outcome path_count_law() {
  Outcome o;
  for (int j = 2; j <= 100; ++j) {
    if (path_count(j) != j * (j - 1) / 2) o.fail("path_count(" + std::to_string(j) + ")");
  }
  for (int j = 2; j <= 30; ++j) {
    const PathIndexMap map = canonical_path_map(j);
    if (map.paths() != path_count(j)) o.fail("map size at J=" + std::to_string(j));
    for (PathId id = 1; id <= map.paths(); ++id) {
      const PointPair p = map.endpoints(id);
      if (map.id_of(p.lo, p.hi) != id) o.fail("id round trip at J=" + std::to_string(j));
    }
    for (PointId a = 1; a <= j; ++a) {
      for (PointId b = a + 1; b <= j; ++b) {
        if (map.endpoints(map.id_of(a, b)) != PointPair{a, b}) o.fail("pair round trip at J=" + std::to_string(j));
      }
    }
  }
  if (o.ok) o.detail = "J in [2,100] counts, J in [2,30] bijective";
  return o;
}

Outcome incidence_algebra() {
  Outcome o;
  t::Rng rng(1001);
  for (int trial = 0; trial < 1000; ++trial) {
    const int j = t::uniform(rng, 3, 15);
    const PathIndexMap map = canonical_path_map(j);
    const auto subset = t::random_subset(rng, j, 2);
    Tour tour;
    tour.sequence = t::random_tour(rng, subset);
    const auto px = build_incidence(map).apply(tour_to_route_vector(tour, map));
    const auto p = t::visit_indicator(j, subset);
    for (int r = 0; r < j; ++r) {
      if (px[static_cast<std::size_t>(r)] != 2 * p[static_cast<std::size_t>(r)]) {
        o.fail("tour " + format_sequence(tour.sequence) + " at point " + std::to_string(r + 1));
      }
    }
  }
  if (o.ok) o.detail = "1000 random tours, Pi x = 2P exactly";
  return o;
}

Outcome partition_invertibility() {
  Outcome o;
  for (int j = 3; j <= 15; j += 2) {
    const PathIndexMap map = canonical_path_map(j);
    const ABPartition part = partition_incidence(build_incidence(map), select_a_set(map));
    if (multiply(to_rational(part.pa), part.pa_inverse) != RationalMatrix::identity(j)) {
      o.fail("inverse check at J=" + std::to_string(j));
    }
    for (int r = 0; r < j; ++r) {
      for (int c = 0; c < j; ++c) {
        if (abs(part.pa_inverse(r, c)) != Rational(1, 2)) o.fail("entry not +-1/2 at J=" + std::to_string(j));
      }
    }
  }
  for (int j : {4, 6, 8}) {
    const PathIndexMap map = canonical_path_map(j);
    const IncidenceMatrix pi = build_incidence(map);
    std::vector<PathId> cycle;
    for (PointId p = 1; p <= j; ++p) cycle.push_back(map.id_of(p, p % j + 1));
    try {
      partition_incidence(pi, cycle);
      o.fail("even cycle accepted at J=" + std::to_string(j));
    } catch (const SingularPartitionError&) {
    }
    const ABPartition part = partition_incidence(pi, select_a_set(map));
    if (multiply(to_rational(part.pa), part.pa_inverse) != RationalMatrix::identity(j)) {
      o.fail("even rule not invertible at J=" + std::to_string(j));
    }
  }
  if (o.ok) o.detail = "odd J 3..15 entries +-1/2; even cycles singular; even rule invertible for 4,6,8";
  return o;
}

Outcome closed_form_equivalence() {
  Outcome o;
  t::Rng rng(1004);
  for (int trial = 0; trial < 200; ++trial) {
    const int j = 2 * t::uniform(rng, 1, 7) + 1;
    const PathIndexMap map = canonical_path_map(j);
    const ABPartition part = partition_incidence(build_incidence(map), select_a_set(map));
    std::vector<Rational> t_a;
    std::vector<PointPair> edges;
    for (PathId id : part.a_ids) {
      t_a.push_back(t::random_rational(rng, 100));
      edges.push_back(map.endpoints(id));
    }
    if (compute_m_closed_form(t_a, edges).values != compute_m(t_a, part).values) {
      o.fail("mismatch at trial " + std::to_string(trial) + ", J=" + std::to_string(j));
    }
  }
  if (o.ok) o.detail = "200 random odd-J cases, exact equality";
  return o;
}

Outcome split_identity() {
  Outcome o;
  t::Rng rng(1005);
  const InstanceDocument& doc = bundled_document();
  const Instance fixture_mass = apply_scenario(doc.instance, doc.scenario("mass"));
  const Decomposition fixture_decomposition = decompose(fixture_mass);
  const AssignmentProblem fixture_problem = make_assignment_problem(fixture_mass, fixture_decomposition.m);

  int plans = 0;
  while (plans < 500) {
    const bool on_fixture = plans % 2 == 0;
    t::RandomInstanceOptions opt;
    opt.points = t::uniform(rng, 3, 12);
    opt.vehicles = t::uniform(rng, 2, 3);
    const Instance random = on_fixture ? Instance{} : t::random_instance(rng, opt);
    const Instance& inst = on_fixture ? fixture_mass : random;
    const Decomposition d = on_fixture ? fixture_decomposition : decompose(inst);
    const AssignmentProblem problem = on_fixture ? fixture_problem : make_assignment_problem(inst, d.m);

    std::vector<int> owners;
    for (PointId j = 2; j <= inst.points; ++j) owners.push_back(t::uniform(rng, 1, inst.vehicles()));
    const auto vectors = vectors_from_owners(inst.points, inst.vehicles(), owners);
    if (!check_feasible(problem, vectors).feasible()) continue;  // only feasible plans count

    std::vector<RouteVector> routes;
    std::vector<std::vector<Rational>> costs;
    Rational direct;
    for (int k = 1; k <= inst.vehicles(); ++k) {
      std::vector<PointId> pts{kDepot};
      for (PointId j = 2; j <= inst.points; ++j) {
        if (owners[static_cast<std::size_t>(j - 2)] == k) pts.push_back(j);
      }
      Tour tour;
      tour.vehicle = k;
      if (pts.size() > 1) tour.sequence = t::random_tour(rng, pts);
      else tour.sequence = {kDepot};
      direct += tour_cost(make_tsp_problem(inst, k, pts), tour.sequence);
      routes.push_back(RouteVector{k, tour_to_route_vector(tour, inst.path_map)});
      costs.push_back(inst.fleet[static_cast<std::size_t>(k - 1)].costs);
    }
    const ObjectiveBreakdown b = objective_split(routes, d.m, d.partition, costs);
    if (b.total != b.l_star + b.l_zero) o.fail("L != L* + L0 on plan " + std::to_string(plans));
    if (b.total != direct) o.fail("L differs from summed tour costs on plan " + std::to_string(plans));
    ++plans;
  }
  if (o.ok) o.detail = "500 feasible plans (250 fixture, 250 random), L = L* + L0 exactly";
  return o;
}

Outcome assignment_oracle_equivalence() {
  Outcome o;
  t::Rng rng(1006);
  int feasible = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const AssignmentProblem p = random_assignment_problem(rng);
    bool solver_infeasible = false;
    bool oracle_infeasible = false;
    AssignmentSolution a;
    AssignmentSolution b;
    try {
      a = solve_assignment(p);
    } catch (const InfeasibleError&) {
      solver_infeasible = true;
    }
    try {
      b = oracle_assignment(p);
    } catch (const InfeasibleError&) {
      oracle_infeasible = true;
    }
    if (solver_infeasible != oracle_infeasible) {
      o.fail("feasibility disagreement on trial " + std::to_string(trial));
      continue;
    }
    if (solver_infeasible) continue;
    ++feasible;
    if (a.objective != b.objective || a.owners() != b.owners()) {
      o.fail("trial " + std::to_string(trial) + ": " + a.objective.to_decimal() + " vs " + b.objective.to_decimal());
    }
  }
  if (o.ok) o.detail = "50 instances (" + std::to_string(feasible) + " feasible), identical optimum and tie-break";
  return o;
}

Outcome tsp_oracle_equivalence() {
  Outcome o;
  t::Rng rng(1007);
  for (int trial = 0; trial < 50; ++trial) {
    const TspProblem p = t::random_tsp_problem(rng, t::uniform(rng, 4, 9), 60);
    const Tour a = solve_tsp(p);
    const Tour b = oracle_tsp(p);
    if (a.cost != b.cost || a.sequence != b.sequence) {
      o.fail("trial " + std::to_string(trial) + ": " + format_sequence(a.sequence) + " vs " +
             format_sequence(b.sequence));
    }
  }
  if (o.ok) o.detail = "50 instances, n in [4,9], identical cost and sequence";
  return o;
}

Outcome scenario_unconstrained() {
  Outcome o;
  const InstanceDocument& doc = bundled_document();
  const Plan plan = run_pipeline(doc, "unconstrained", MSource::kDerived);
  const Sets expected{{2, 3, 4, 5, 6, 7, 8, 9, 10, 11}, {}, {}};
  if (partitions(plan.assignment, 3) != expected) o.fail("assignment " + format_sets(partitions(plan.assignment, 3)));

  std::vector<PointId> all;
  for (PointId j = 1; j <= 11; ++j) all.push_back(j);
  const Tour oracle = oracle_tsp(make_tsp_problem(plan.instance, 1, all));
  if (plan.tours[0].cost != oracle.cost || plan.tours[0].sequence != oracle.sequence) {
    o.fail("tour " + format_sequence(plan.tours[0].sequence) + " is not the exhaustive optimum");
  }
  const Scenario scenario = doc.scenario("unconstrained");
  const auto ledger = build_ledger(plan, &*scenario.published, nullptr);
  const LedgerEntry* row = ledger_row(ledger, "total objective L = 46");
  if (row == nullptr) o.fail("no ledger row for the published total");
  if (o.ok) {
    o.detail = "vehicles 2,3 unused; tour " + format_sequence(oracle.sequence) + " = " + oracle.cost.to_decimal() +
               " (oracle over 10!/2 tours); ledger delta " + row->delta;
  }
  return o;
}

// Shared by the two capacitated scenarios: solver and oracle partitions,
// assignment objective, tour optimality, and the ledger row.
Outcome capacitated_scenario(const std::string& name, const Sets& expected, const Rational& objective,
                             const std::vector<Rational>& mass_loads, const std::vector<Rational>& volume_loads,
                             const std::string& total_claim) {
  Outcome o;
  const InstanceDocument& doc = bundled_document();
  const Plan plan = run_pipeline(doc, name, MSource::kPaperOverride);
  const Sets solver = partitions(plan.assignment, 3);
  const AssignmentSolution oracle = oracle_assignment(assignment_problem_of(plan));
  const Sets exhaustive = partitions(oracle, 3);

  if (solver != expected) o.fail("solver partitions " + format_sets(solver) + ", expected " + format_sets(expected));
  if (exhaustive != expected) {
    o.fail("oracle partitions " + format_sets(exhaustive) + " (objective " + oracle.objective.to_decimal() +
           "), expected " + format_sets(expected));
  }
  if (plan.assignment.objective != objective) {
    o.fail("assignment objective " + plan.assignment.objective.to_decimal() + ", expected " + objective.to_decimal());
  }
  for (int k = 1; k <= 3; ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    if (!mass_loads.empty() && plan.load_mass(k) != mass_loads[i]) {
      o.fail("vehicle " + std::to_string(k) + " mass load " + plan.load_mass(k).to_decimal());
    }
    if (!volume_loads.empty() && plan.load_volume(k) != volume_loads[i]) {
      o.fail("vehicle " + std::to_string(k) + " volume load " + plan.load_volume(k).to_decimal());
    }
  }
  check_tours_against_oracle(plan, o);

  const Scenario scenario = doc.scenario(name);
  const auto ledger = build_ledger(plan, &*scenario.published, nullptr);
  const LedgerEntry* row = ledger_row(ledger, total_claim);
  if (row == nullptr) o.fail("no ledger row for the published total");
  const std::string summary = "partitions " + format_sets(solver) + ", objective " +
                              plan.assignment.objective.to_decimal() + ", total " +
                              plan.breakdown.total.to_decimal() + (row ? " (ledger delta " + row->delta + ")" : "");
  o.detail = o.ok ? summary : o.detail + " | computed " + summary;
  return o;
}

Outcome scenario_mass() {
  return capacitated_scenario("mass", {{7, 10, 11}, {2, 5, 6}, {3, 4, 8, 9}}, Rational::parse("88.15"), {}, {},
                              "total objective L = 63.95");
}

Outcome scenario_mass_volume() {
  return capacitated_scenario("mass_volume", {{6, 7, 8, 10, 11}, {2, 9}, {3, 4, 5}}, Rational::parse("85.55"),
                              {Rational(8), Rational(6), Rational(5)}, {Rational(11), Rational(14), Rational(36)},
                              "total objective L = 72.8");
}

Outcome heuristic_soundness() {
  Outcome o;
  const InstanceDocument& doc = bundled_document();
  std::string fixture_summary;
  for (const char* name : {"mass", "mass_volume"}) {
    const Plan joint = solve_monolithic_oracle(doc.instance, doc.scenario(name));
    for (MSource source : {MSource::kDerived, MSource::kPaperOverride}) {
      const Plan plan = run_pipeline(doc, name, source);
      if (plan.breakdown.total < joint.breakdown.total) {
        o.fail(std::string(name) + "/" + std::string(to_string(source)) + " beats the joint optimum");
      }
    }
    fixture_summary += std::string(fixture_summary.empty() ? "" : ", ") + name + " joint optimum " +
                       joint.breakdown.total.to_decimal();
  }

  t::Rng rng(1011);
  int compared = 0;
  while (compared < 10) {
    t::RandomInstanceOptions opt;
    opt.points = t::uniform(rng, 4, 8);
    opt.vehicles = t::uniform(rng, 2, 3);
    opt.tightness = 1.4;
    const Instance inst = t::random_instance(rng, opt);
    try {
      const Plan plan = run_pipeline(inst, Scenario{}, MSource::kDerived);
      const Plan joint = solve_monolithic_oracle(inst, Scenario{});
      if (plan.breakdown.total < joint.breakdown.total) o.fail("random instance " + std::to_string(compared));
      ++compared;
    } catch (const InfeasibleError&) {
      // Draw another instance; infeasible ones have nothing to compare.
    }
  }
  if (o.ok) o.detail = fixture_summary + "; 10 random instances";
  return o;
}

Outcome determinism() {
  Outcome o;
  auto solve_json = [](const std::string& scenario, const std::string& source) {
    const std::vector<std::string> args{"mtsp", "solve", "--scenario", scenario, "--m-source", source,
                                        "--format", "json", "--dump-partition"};
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return std::make_pair(code, out.str());
  };
  int runs = 0;
  for (const char* scenario : {"unconstrained", "mass", "mass_volume"}) {
    for (const char* source : {"derived", "paper_override"}) {
      const auto first = solve_json(scenario, source);
      if (first.first != cli::kOk) o.fail(std::string(scenario) + " exited " + std::to_string(first.first));
      for (int repeat = 0; repeat < 3; ++repeat) {
        if (solve_json(scenario, source) != first) o.fail(std::string(scenario) + "/" + source + " output differs");
        ++runs;
      }
    }
  }
  if (o.ok) o.detail = std::to_string(runs) + " repeated runs byte-identical";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

const std::vector<Criterion> kCriteria{
    {1, "path-count law", 1.0, path_count_law},
    {2, "incidence algebra", 5.0, incidence_algebra},
    {3, "partition invertibility", 5.0, partition_invertibility},
    {4, "closed-form equivalence", 5.0, closed_form_equivalence},
    {5, "objective-split identity", 10.0, split_identity},
    {6, "assignment oracle equivalence", 30.0, assignment_oracle_equivalence},
    {7, "TSP oracle equivalence", 30.0, tsp_oracle_equivalence},
    {8, "unconstrained scenario", 60.0, scenario_unconstrained},
    {9, "mass scenario", 30.0, scenario_mass},
    {10, "mass and volume scenario", 30.0, scenario_mass_volume},
    {11, "heuristic soundness", 300.0, heuristic_soundness},
    {12, "determinism", 10.0, determinism},
};

bool run_criterion(const Criterion& c) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o.fail(std::string("threw: ") + e.what());
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (elapsed > c.budget_seconds) {
    o.fail("took " + std::to_string(elapsed) + " s, budget " + std::to_string(c.budget_seconds) + " s");
  }
  std::printf("criterion %2d %s  %-30s %7.3fs  %s\n", c.id, o.ok ? "PASS" : "FAIL", c.name, elapsed, o.detail.c_str());
  std::fflush(stdout);
  return o.ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-12)")->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);

  bool all_ok = true;
  for (const Criterion& c : kCriteria) {
    if (only == 0 || c.id == only) all_ok = run_criterion(c) && all_ok;
  }
  return all_ok ? 0 : 1;
}
