#include "mtsp/report.hpp"

#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mtsp/errors.hpp"

namespace mtsp {
namespace {

using ojson = nlohmann::ordered_json;

ojson rational_json(const Rational& r) {
  return ojson{{"num", r.num()}, {"den", r.den()}, {"decimal", r.to_decimal()}};
}

std::string point_set(const std::vector<PointId>& pts) {
  std::string out = "{";
  for (std::size_t i = 0; i < pts.size(); ++i) out += (i ? "," : "") + std::to_string(pts[i]);
  return out + "}";
}

std::optional<std::vector<PointId>> parse_route(const std::string& text) {
  std::vector<PointId> seq;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, '-')) {
    try {
      seq.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  return seq;
}

std::optional<Rational> walk_cost(const Instance& instance, int vehicle, const std::vector<PointId>& seq) {
  Rational sum;
  try {
    for (std::size_t s = 0; s + 1 < seq.size(); ++s) sum += pair_cost(instance, vehicle, seq[s], seq[s + 1]);
  } catch (const Error&) {
    return std::nullopt;
  }
  return sum;
}

std::string describe_route(const Tour& t) {
  if (t.sequence.size() <= 1) return "unused";
  return format_sequence(t.sequence) + " costing " + t.cost.to_decimal();
}

std::string signed_decimal(const Rational& r) { return r.sign() > 0 ? "+" + r.to_decimal() : r.to_decimal(); }

ojson assignment_json(const Plan& plan) {
  ojson rows = ojson::array();
  for (const Vehicle& v : plan.instance.fleet) {
    rows.push_back(ojson{{"vehicle", v.id},
                         {"points", plan.assignment.points_of(v.id)},
                         {"load_mass", rational_json(plan.load_mass(v.id))},
                         {"load_volume", rational_json(plan.load_volume(v.id))}});
  }
  return rows;
}

ojson routes_json(const Plan& plan) {
  ojson rows = ojson::array();
  for (const Tour& t : plan.tours) {
    rows.push_back(ojson{{"vehicle", t.vehicle}, {"sequence", format_sequence(t.sequence)}, {"cost", rational_json(t.cost)}});
  }
  return rows;
}

ojson objective_json(const ObjectiveBreakdown& b) {
  return ojson{{"l_star", rational_json(b.l_star)}, {"l_zero", rational_json(b.l_zero)}, {"total", rational_json(b.total)}};
}

ojson partition_json(const Plan& plan) {
  const ABPartition& part = plan.decomposition.partition;
  ojson inverse = ojson::array();
  for (int r = 0; r < part.pa_inverse.rows(); ++r) {
    ojson row = ojson::array();
    for (int c = 0; c < part.pa_inverse.cols(); ++c) row.push_back(part.pa_inverse(r, c).to_string());
    inverse.push_back(std::move(row));
  }
  auto m_rows = [](const std::vector<MCoefficients>& ms) {
    ojson rows = ojson::array();
    for (const auto& m : ms) {
      ojson values = ojson::array();
      for (const auto& v : m.values) values.push_back(v.to_string());
      rows.push_back(ojson{{"vehicle", m.vehicle}, {"values", std::move(values)}});
    }
    return rows;
  };
  return ojson{{"a_ids", part.a_ids},
               {"b_ids", part.b_ids},
               {"pa_inverse", std::move(inverse)},
               {"m_derived", m_rows(plan.decomposition.m)},
               {"m_assignment", m_rows(plan.assignment_m)}};
}

ojson oracle_json(const ReportInput& in) {
  if (!in.stage_checks && !in.monolithic) return nullptr;
  ojson out = ojson::object();
  if (in.stage_checks) {
    const StageChecks& sc = *in.stage_checks;
    if (sc.assignment_oracle) {
      out["assignment"] = ojson{{"objective", rational_json(sc.assignment_oracle->objective)},
                                {"agrees", sc.assignment_agrees}};
    } else {
      out["assignment"] = ojson{{"skipped", sc.assignment_skipped}};
    }
    ojson tours = ojson::array();
    for (const auto& t : sc.tours) {
      tours.push_back(ojson{{"vehicle", t.vehicle},
                            {"sequence", format_sequence(t.oracle.sequence)},
                            {"cost", rational_json(t.oracle.cost)},
                            {"agrees", t.agrees}});
    }
    out["tours"] = std::move(tours);
  }
  if (in.monolithic) {
    const Plan& mono = *in.monolithic;
    out["monolithic"] = ojson{{"total", rational_json(mono.breakdown.total)},
                              {"gap", rational_json(in.plan->breakdown.total - mono.breakdown.total)},
                              {"assignment", assignment_json(mono)},
                              {"routes", routes_json(mono)}};
  } else {
    out["monolithic"] = nullptr;
  }
  return out;
}

std::string render_json(const ReportInput& in, const std::vector<LedgerEntry>& ledger) {
  const Plan& plan = *in.plan;
  ojson doc;
  doc["scenario"] = plan.scenario;
  doc["m_source"] = std::string(to_string(plan.m_source));
  doc["assignment"] = assignment_json(plan);
  doc["assignment_objective"] = rational_json(plan.assignment.objective);
  doc["routes"] = routes_json(plan);
  doc["objective"] = objective_json(plan.breakdown);
  doc["oracle"] = oracle_json(in);
  ojson rows = ojson::array();
  for (const auto& e : ledger) {
    rows.push_back(ojson{{"claim", e.claim}, {"source", e.source}, {"computed", e.computed}, {"delta", e.delta}});
  }
  doc["ledger"] = std::move(rows);
  if (in.dump_partition) doc["partition"] = partition_json(plan);
  return doc.dump(2) + "\n";
}

void text_plan_body(std::ostream& os, const Plan& plan) {
  os << "Assignment\n";
  os << "  " << std::left << std::setw(9) << "vehicle" << std::setw(32) << "points" << std::setw(10) << "mass"
     << "volume\n";
  for (const Vehicle& v : plan.instance.fleet) {
    os << "  " << std::setw(9) << v.id << std::setw(32) << point_set(plan.assignment.points_of(v.id)) << std::setw(10)
       << plan.load_mass(v.id).to_decimal() << plan.load_volume(v.id).to_decimal() << "\n";
  }
  os << "Routes\n";
  for (const Tour& t : plan.tours) {
    os << "  vehicle " << t.vehicle << ": " << std::setw(28) << format_sequence(t.sequence) << " cost "
       << t.cost.to_decimal() << " (" << t.cost << ")\n";
  }
}

std::string render_text(const ReportInput& in, const std::vector<LedgerEntry>& ledger) {
  const Plan& plan = *in.plan;
  std::ostringstream os;
  os << "Scenario: " << plan.scenario << "   m-source: " << to_string(plan.m_source) << "\n\n";
  text_plan_body(os, plan);
  os << "\nObjective\n";
  os << "  assignment objective  " << plan.assignment.objective.to_decimal() << "\n";
  os << "  L* (derived M)        " << plan.breakdown.l_star.to_decimal() << " (" << plan.breakdown.l_star << ")\n";
  os << "  L0                    " << plan.breakdown.l_zero.to_decimal() << " (" << plan.breakdown.l_zero << ")\n";
  os << "  L = L* + L0           " << plan.breakdown.total.to_decimal() << " (" << plan.breakdown.total << ")\n";

  if (in.stage_checks) {
    const StageChecks& sc = *in.stage_checks;
    os << "\nStage oracles\n";
    if (sc.assignment_oracle) {
      os << "  assignment: exhaustive objective " << sc.assignment_oracle->objective.to_decimal()
         << (sc.assignment_agrees ? "  [agrees]" : "  [DIFFERS]") << "\n";
    } else {
      os << "  assignment: skipped (" << sc.assignment_skipped << ")\n";
    }
    for (const auto& t : sc.tours) {
      os << "  vehicle " << t.vehicle << " tour: exhaustive " << format_sequence(t.oracle.sequence) << " cost "
         << t.oracle.cost.to_decimal() << (t.agrees ? "  [agrees]" : "  [DIFFERS]") << "\n";
    }
  }
  if (in.monolithic) {
    const Plan& mono = *in.monolithic;
    os << "\nJoint optimum (exhaustive)\n";
    text_plan_body(os, mono);
    os << "  total " << mono.breakdown.total.to_decimal() << ", decomposition gap "
       << (plan.breakdown.total - mono.breakdown.total).to_decimal() << "\n";
  }
  if (in.dump_partition) {
    const ABPartition& part = plan.decomposition.partition;
    os << "\nPartition\n  A-set ids:";
    for (PathId id : part.a_ids) os << " " << id;
    os << "\n  B-set ids:";
    for (PathId id : part.b_ids) os << " " << id;
    os << "\n  (Pi^A)^-1:\n";
    for (int r = 0; r < part.pa_inverse.rows(); ++r) {
      os << "   ";
      for (int c = 0; c < part.pa_inverse.cols(); ++c) os << " " << std::setw(5) << part.pa_inverse(r, c).to_string();
      os << "\n";
    }
    for (const auto& m : plan.decomposition.m) {
      os << "  M derived, vehicle " << m.vehicle << ":";
      for (const auto& v : m.values) os << " " << v.to_decimal();
      os << "\n";
    }
    for (const auto& m : plan.assignment_m) {
      os << "  M used,    vehicle " << m.vehicle << ":";
      for (const auto& v : m.values) os << " " << v.to_decimal();
      os << "\n";
    }
  }
  if (!ledger.empty()) {
    os << "\nDiscrepancy ledger\n";
    for (const auto& e : ledger) {
      os << "  - " << e.claim << "\n      source: " << e.source << "\n      computed: " << e.computed
         << "\n      delta: " << e.delta << "\n";
    }
  }
  return os.str();
}

}  // namespace

ReportFormat parse_report_format(std::string_view text) {
  if (text == "text") return ReportFormat::kText;
  if (text == "json") return ReportFormat::kJson;
  throw Error(ErrorKind::kInvalidQuery, "unknown report format '" + std::string(text) + "'");
}

StageChecks run_stage_checks(const Plan& plan) {
  StageChecks checks;
  const AssignmentProblem problem = make_assignment_problem(plan.instance, plan.assignment_m);
  try {
    checks.assignment_oracle = oracle_assignment(problem);
    checks.assignment_agrees = checks.assignment_oracle->objective == plan.assignment.objective &&
                               checks.assignment_oracle->owners() == plan.assignment.owners();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kOracleLimit) throw;
    checks.assignment_skipped = e.message();
  }
  for (const Tour& t : plan.tours) {
    std::vector<PointId> pts = plan.assignment.points_of(t.vehicle);
    try {
      Tour oracle = oracle_tsp(make_tsp_problem(plan.instance, t.vehicle, pts));
      const bool agrees = oracle.cost == t.cost && oracle.sequence == t.sequence;
      checks.tours.push_back({t.vehicle, std::move(oracle), agrees});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kOracleLimit) throw;
    }
  }
  return checks;
}

std::vector<LedgerEntry> build_ledger(const Plan& plan, const PublishedResult* published, const Plan* monolithic) {
  std::vector<LedgerEntry> ledger;
  if (!published) return ledger;
  const std::string source = "published " + plan.scenario + " scenario";

  if (published->total) {
    ledger.push_back({"total objective L = " + published->total->to_decimal(), source,
                      plan.breakdown.total.to_decimal() + " (" + std::string(to_string(plan.m_source)) + " M)",
                      signed_decimal(plan.breakdown.total - *published->total)});
    if (monolithic) {
      ledger.push_back({"total objective L = " + published->total->to_decimal(), source + " vs joint optimum",
                        monolithic->breakdown.total.to_decimal() + " (exhaustive joint optimum)",
                        signed_decimal(monolithic->breakdown.total - *published->total)});
    }
  }
  for (const auto& [vehicle, points] : published->partition) {
    if (vehicle < 1 || vehicle > plan.instance.vehicles()) continue;
    const auto computed = plan.assignment.points_of(vehicle);
    ledger.push_back({"vehicle " + std::to_string(vehicle) + " serves " + point_set(points), source,
                      point_set(computed), computed == points ? "match" : "differs"});
  }
  for (const auto& [vehicle, route] : published->routes) {
    if (vehicle < 1 || vehicle > plan.instance.vehicles()) continue;
    const Tour& tour = plan.tours[static_cast<std::size_t>(vehicle - 1)];
    if (route.empty()) {
      const Rational cost = tour.sequence.size() <= 1 ? Rational(0) : tour.cost;
      ledger.push_back({"vehicle " + std::to_string(vehicle) + " unused", source, describe_route(tour),
                        signed_decimal(cost)});
      continue;
    }
    const auto seq = parse_route(route);
    const auto printed = seq ? walk_cost(plan.instance, vehicle, *seq) : std::nullopt;
    if (!printed) {
      ledger.push_back({"vehicle " + std::to_string(vehicle) + " route " + route, source, describe_route(tour),
                        "printed route not evaluable"});
      continue;
    }
    ledger.push_back({"vehicle " + std::to_string(vehicle) + " route " + route + " costing " + printed->to_decimal(),
                      source, describe_route(tour), signed_decimal(tour.cost - *printed)});
  }
  return ledger;
}

std::string emit_report(const ReportInput& input, ReportFormat format) {
  if (!input.plan) throw Error(ErrorKind::kInvalidQuery, "report needs a plan");
  const auto ledger = build_ledger(*input.plan, input.published, input.monolithic);
  return format == ReportFormat::kJson ? render_json(input, ledger) : render_text(input, ledger);
}

}  // namespace mtsp
