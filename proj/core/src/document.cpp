#include "mtsp/document.hpp"

#include <fstream>
#include <sstream>

#include "json_support.hpp"
#include "mtsp/errors.hpp"

namespace mtsp {

namespace detail {
extern const std::string_view kBundledFixtureJson;
}  // namespace detail

namespace {

using detail::json;
using detail::schema_error;

std::optional<std::vector<Capacity>> capacity_override(const json& object, const char* key, std::size_t vehicles,
                                                       const std::string& field) {
  if (!object.contains(key)) return std::nullopt;
  const json& v = object.at(key);
  if (v.is_null()) return std::vector<Capacity>(vehicles);
  if (!v.is_array() || v.size() != vehicles) {
    schema_error(field, "expected null or an array of " + std::to_string(vehicles) + " capacities");
  }
  std::vector<Capacity> out;
  for (std::size_t k = 0; k < vehicles; ++k) {
    out.push_back(v[k].is_null() ? Capacity{}
                                 : Capacity{detail::nonnegative_rational(v[k], field + "[" + std::to_string(k) + "]")});
  }
  return out;
}

PublishedResult parse_published(const json& v, const std::string& field) {
  PublishedResult out;
  if (v.contains("total")) out.total = detail::rational_from_json(v.at("total"), field + ".total");
  if (v.contains("routes")) {
    for (const auto& [key, route] : v.at("routes").items()) {
      if (!route.is_string()) schema_error(field + ".routes." + key, "expected a string");
      out.routes[std::stoi(key)] = route.get<std::string>();
    }
  }
  if (v.contains("partition")) {
    for (const auto& [key, points] : v.at("partition").items()) {
      out.partition[std::stoi(key)] = points.get<std::vector<PointId>>();
    }
  }
  return out;
}

Scenario parse_scenario(const std::string& name, const json& v, const Instance& inst) {
  const std::string field = "scenarios." + name;
  if (!v.is_object()) schema_error(field, "expected an object");
  Scenario s;
  s.name = name;
  s.description = v.value("description", "");
  const auto k = static_cast<std::size_t>(inst.vehicles());
  const auto j = static_cast<std::size_t>(inst.points);
  s.mass_capacity = capacity_override(v, "mass_capacity", k, field + ".mass_capacity");
  s.volume_capacity = capacity_override(v, "volume_capacity", k, field + ".volume_capacity");
  if (v.contains("demand_mass")) s.demand_mass = detail::rational_array(v.at("demand_mass"), field + ".demand_mass", j);
  if (v.contains("demand_volume")) {
    s.demand_volume = detail::rational_array(v.at("demand_volume"), field + ".demand_volume", j);
  }
  if (v.contains("published")) s.published = parse_published(v.at("published"), field + ".published");
  return s;
}

}  // namespace

Scenario InstanceDocument::scenario(std::string_view name) const {
  for (const auto& s : scenarios) {
    if (s.name == name) return s;
  }
  if (name == kAsLoadedScenario) return Scenario{std::string(name), "instance as loaded", {}, {}, {}, {}, {}};
  if (name == kUnconstrainedScenario) {
    const auto k = static_cast<std::size_t>(instance.vehicles());
    return Scenario{std::string(name), "no mass or volume limits", std::vector<Capacity>(k),
                    std::vector<Capacity>(k), {}, {}, {}};
  }
  throw Error(ErrorKind::kInvalidQuery, "unknown scenario '" + std::string(name) + "'");
}

InstanceDocument load_document(std::string_view json_text) {
  const json doc = detail::parse_document(json_text);
  InstanceDocument out;
  out.instance = detail::instance_from_json(doc);
  out.name = doc.value("name", "");

  if (doc.contains("m_override") && !doc.at("m_override").is_null()) {
    const json& mo = doc.at("m_override");
    const auto k_count = static_cast<std::size_t>(out.instance.vehicles());
    if (!mo.is_array() || mo.size() != k_count) schema_error("m_override", "expected one entry per vehicle");
    std::vector<json> raw(k_count);
    std::vector<std::string> fields(k_count);
    for (std::size_t e = 0; e < k_count; ++e) {
      const std::string f = "m_override[" + std::to_string(e) + "]";
      const int id = detail::int_field(mo[e], "vehicle", f);
      if (id < 1 || static_cast<std::size_t>(id) > k_count) schema_error(f + ".vehicle", "out of range");
      if (!mo[e].contains("values")) schema_error(f + ".values", "missing");
      raw[static_cast<std::size_t>(id - 1)] = mo[e].at("values");
      fields[static_cast<std::size_t>(id - 1)] = f + ".values";
    }
    // Values cover points 2..J; the depot gets zero.
    auto resolved = detail::resolve_scaled_vectors(raw, fields, static_cast<std::size_t>(out.instance.points - 1));
    for (auto& v : resolved) v.insert(v.begin(), Rational(0));
    out.m_override = std::move(resolved);
  }

  if (doc.contains("scenarios")) {
    const json& sc = doc.at("scenarios");
    if (!sc.is_object()) schema_error("scenarios", "expected an object");
    // nlohmann objects iterate in key order, so scenario order is stable.
    for (const auto& [name, value] : sc.items()) out.scenarios.push_back(parse_scenario(name, value, out.instance));
  }
  return out;
}

InstanceDocument load_document_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kSchema, "cannot open instance file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_document(buf.str());
}

std::string_view bundled_document_text() { return detail::kBundledFixtureJson; }

const InstanceDocument& bundled_document() {
  static const InstanceDocument doc = load_document(detail::kBundledFixtureJson);
  return doc;
}

Instance apply_scenario(const Instance& instance, const Scenario& scenario) {
  Instance out = instance;
  for (std::size_t k = 0; k < out.fleet.size(); ++k) {
    if (scenario.mass_capacity) out.fleet[k].mass_capacity = (*scenario.mass_capacity)[k];
    if (scenario.volume_capacity) out.fleet[k].volume_capacity = (*scenario.volume_capacity)[k];
  }
  for (std::size_t j = 0; j < out.demands.size(); ++j) {
    if (scenario.demand_mass) out.demands[j].mass = (*scenario.demand_mass)[j];
    if (scenario.demand_volume) out.demands[j].volume = (*scenario.demand_volume)[j];
  }
  out.validate();
  return out;
}

}  // namespace mtsp
