#include "mtsp/instance.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "json_support.hpp"
#include "mtsp/errors.hpp"

namespace mtsp {

std::int64_t path_count(int points) {
  if (points < 2) {
    throw Error(ErrorKind::kInvalidInstance, "need at least 2 points, got " + std::to_string(points));
  }
  return static_cast<std::int64_t>(points) * (points - 1) / 2;
}

PathIndexMap PathIndexMap::from_pairs(int points, std::vector<PointPair> by_id) {
  const auto expected = path_count(points);
  if (static_cast<std::int64_t>(by_id.size()) != expected) {
    throw Error(ErrorKind::kSchema, "field 'path_map': expected " + std::to_string(expected) +
                                        " paths for " + std::to_string(points) + " points, got " +
                                        std::to_string(by_id.size()));
  }
  PathIndexMap map;
  map.points_ = points;
  map.lookup_.assign(static_cast<std::size_t>(points) * points, 0);
  for (std::size_t i = 0; i < by_id.size(); ++i) {
    PointPair p = PointPair::of(by_id[i].lo, by_id[i].hi);
    const std::string where = "field 'path_map' id " + std::to_string(i + 1);
    if (p.lo == p.hi) throw Error(ErrorKind::kSchema, where + ": self-pair {" + std::to_string(p.lo) + "}");
    if (p.lo < 1 || p.hi > points) throw Error(ErrorKind::kSchema, where + ": point out of range");
    auto& slot = map.lookup_[static_cast<std::size_t>((p.lo - 1) * points + (p.hi - 1))];
    if (slot != 0) {
      throw Error(ErrorKind::kSchema, where + ": duplicate pair {" + std::to_string(p.lo) + "," +
                                          std::to_string(p.hi) + "} (also id " + std::to_string(slot) + ")");
    }
    slot = static_cast<PathId>(i + 1);
    map.pairs_.push_back(p);
  }
  return map;
}

PointPair PathIndexMap::endpoints(PathId id) const {
  if (id < 1 || id > paths()) {
    throw Error(ErrorKind::kInvalidQuery, "path id " + std::to_string(id) + " out of range");
  }
  return pairs_[static_cast<std::size_t>(id - 1)];
}

PathId PathIndexMap::id_of(PointId a, PointId b) const {
  if (a == b) throw Error(ErrorKind::kInvalidQuery, "no path joins point " + std::to_string(a) + " to itself");
  if (a < 1 || b < 1 || a > points_ || b > points_) {
    throw Error(ErrorKind::kInvalidQuery, "point out of range in pair {" + std::to_string(a) + "," +
                                              std::to_string(b) + "}");
  }
  PointPair p = PointPair::of(a, b);
  return lookup_[static_cast<std::size_t>((p.lo - 1) * points_ + (p.hi - 1))];
}

PathIndexMap canonical_path_map(int points) {
  path_count(points);
  std::vector<PointPair> pairs;
  std::vector<bool> used(static_cast<std::size_t>(points) * points, false);
  auto take = [&](PointId a, PointId b) {
    PointPair p = PointPair::of(a, b);
    auto idx = static_cast<std::size_t>((p.lo - 1) * points + (p.hi - 1));
    if (used[idx]) return;  // J = 2: {1,2} is both the closing and the first edge
    used[idx] = true;
    pairs.push_back(p);
  };
  take(1, points);
  for (PointId j = 1; j < points; ++j) take(j, j + 1);
  for (PointId a = 1; a <= points; ++a) {
    for (PointId b = a + 1; b <= points; ++b) take(a, b);
  }
  return PathIndexMap::from_pairs(points, std::move(pairs));
}

PathIndexMap table5_path_map() {
  // Row/column = point, cell = path id; 0 on the diagonal.
  static constexpr std::array<std::array<int, 11>, 11> kTable = {{
      {0, 2, 12, 13, 14, 15, 16, 17, 18, 19, 1},
      {2, 0, 3, 28, 29, 31, 34, 35, 42, 49, 20},
      {12, 3, 0, 4, 30, 32, 41, 36, 50, 43, 21},
      {13, 28, 4, 0, 5, 33, 40, 46, 37, 51, 22},
      {14, 29, 30, 5, 0, 6, 39, 47, 52, 38, 23},
      {15, 31, 32, 33, 6, 0, 7, 48, 44, 53, 24},
      {16, 34, 41, 40, 39, 7, 0, 8, 54, 45, 25},
      {17, 35, 36, 46, 47, 48, 8, 0, 9, 55, 26},
      {18, 42, 50, 37, 52, 44, 54, 9, 0, 10, 27},
      {19, 49, 43, 51, 38, 53, 45, 55, 10, 0, 11},
      {1, 20, 21, 22, 23, 24, 25, 26, 27, 11, 0},
  }};
  std::vector<PointPair> pairs(55);
  for (int a = 0; a < 11; ++a) {
    for (int b = a + 1; b < 11; ++b) {
      pairs[static_cast<std::size_t>(kTable[a][b] - 1)] = PointPair{a + 1, b + 1};
    }
  }
  return PathIndexMap::from_pairs(11, std::move(pairs));
}

bool within(const Rational& load, const Capacity& capacity) { return !capacity || load <= *capacity; }

const Vehicle& Instance::vehicle(int id) const {
  if (id < 1 || id > vehicles()) {
    throw Error(ErrorKind::kInvalidQuery, "vehicle id " + std::to_string(id) + " out of range");
  }
  return fleet[static_cast<std::size_t>(id - 1)];
}

void Instance::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::kInvalidInstance, msg); };
  if (points < 2) fail("need at least 2 points");
  if (path_map.points() != points) fail("path map covers " + std::to_string(path_map.points()) + " points");
  if (static_cast<int>(demands.size()) != points) fail("demand vector length differs from point count");
  if (fleet.empty()) fail("fleet is empty");
  if (demands[0].mass != 0 || demands[0].volume != 0) fail("depot (point 1) must have zero demand");
  for (const auto& d : demands) {
    if (d.mass < 0 || d.volume < 0) fail("negative demand");
  }
  for (std::size_t k = 0; k < fleet.size(); ++k) {
    const Vehicle& v = fleet[k];
    if (v.id != static_cast<int>(k) + 1) fail("vehicle ids must run 1..K in order");
    if (static_cast<int>(v.costs.size()) != paths()) fail("vehicle " + std::to_string(v.id) + " cost vector length");
    if ((v.mass_capacity && *v.mass_capacity < 0) || (v.volume_capacity && *v.volume_capacity < 0)) {
      fail("vehicle " + std::to_string(v.id) + " has negative capacity");
    }
    for (const auto& c : v.costs) {
      if (c < 0) fail("vehicle " + std::to_string(v.id) + " has a negative path cost");
    }
  }
}

const Rational& pair_cost(const Instance& instance, int vehicle, PointId a, PointId b) {
  const PathId id = instance.path_map.id_of(a, b);
  return instance.vehicle(vehicle).costs[static_cast<std::size_t>(id - 1)];
}

// ---------------------------------------------------------------------------
// JSON ingestion

namespace detail {

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kSchema, std::string("malformed document: ") + e.what());
  }
}

Rational rational_from_json(const json& value, const std::string& field) {
  try {
    if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
    if (value.is_number_float()) return Rational::parse(value.dump());
    if (value.is_string()) return Rational::parse(value.get<std::string>());
  } catch (const std::exception& e) {
    schema_error(field, e.what());
  }
  schema_error(field, "expected a number or decimal string, got " + value.dump());
}

Rational nonnegative_rational(const json& value, const std::string& field) {
  Rational r = rational_from_json(value, field);
  if (r < 0) schema_error(field, "must be non-negative, got " + r.to_string());
  return r;
}

Capacity capacity_from_json(const json& object, const char* key, const std::string& field) {
  if (!object.contains(key) || object.at(key).is_null()) return std::nullopt;
  return nonnegative_rational(object.at(key), field);
}

std::vector<Rational> rational_array(const json& value, const std::string& field, std::size_t expected) {
  if (!value.is_array()) schema_error(field, "expected an array");
  if (value.size() != expected) {
    schema_error(field, "expected " + std::to_string(expected) + " entries, got " + std::to_string(value.size()));
  }
  std::vector<Rational> out;
  out.reserve(expected);
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(nonnegative_rational(value[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

int int_field(const json& object, const char* key, const std::string& field) {
  if (!object.is_object() || !object.contains(key)) schema_error(field, std::string("missing '") + key + "'");
  const json& v = object.at(key);
  if (!v.is_number_integer()) schema_error(field + "." + key, "expected an integer");
  return v.get<int>();
}

std::vector<std::vector<Rational>> resolve_scaled_vectors(const std::vector<json>& raw,
                                                          const std::vector<std::string>& fields,
                                                          std::size_t expected) {
  const std::size_t n = raw.size();
  std::vector<std::vector<Rational>> out(n);
  std::vector<int> state(n, 0);  // 0 = pending, 1 = resolving, 2 = done

  auto resolve = [&](auto&& self, std::size_t k) -> void {
    if (state[k] == 2) return;
    if (state[k] == 1) schema_error(fields[k], "cyclic scale_of reference");
    state[k] = 1;
    const json& v = raw[k];
    if (v.is_array()) {
      out[k] = rational_array(v, fields[k], expected);
    } else if (v.is_object() && v.contains("scale_of")) {
      const int base = int_field(v, "scale_of", fields[k]);
      if (base < 1 || static_cast<std::size_t>(base) > n) {
        schema_error(fields[k] + ".scale_of", "unknown vehicle " + std::to_string(base));
      }
      if (!v.contains("factor")) schema_error(fields[k], "missing 'factor'");
      const Rational factor = nonnegative_rational(v.at("factor"), fields[k] + ".factor");
      self(self, static_cast<std::size_t>(base - 1));
      out[k].reserve(expected);
      for (const auto& c : out[static_cast<std::size_t>(base - 1)]) out[k].push_back(c * factor);
    } else {
      schema_error(fields[k], "expected an array or {scale_of, factor}");
    }
    state[k] = 2;
  };
  for (std::size_t k = 0; k < n; ++k) resolve(resolve, k);
  return out;
}

Instance instance_from_json(const json& doc) {
  if (!doc.is_object()) schema_error("<root>", "expected an object");
  Instance inst;
  inst.points = int_field(doc, "points", "<root>");
  if (inst.points < 2) schema_error("points", "need at least 2 points");
  const auto paths = static_cast<std::size_t>(path_count(inst.points));

  if (!doc.contains("path_map")) schema_error("path_map", "missing");
  const json& pm = doc.at("path_map");
  if (pm.is_string()) {
    if (pm.get<std::string>() != "canonical") schema_error("path_map", "unknown map name " + pm.dump());
    inst.path_map = canonical_path_map(inst.points);
  } else if (pm.is_array()) {
    std::vector<PointPair> pairs(pm.size());
    std::vector<bool> seen(pm.size(), false);
    for (std::size_t e = 0; e < pm.size(); ++e) {
      const std::string f = "path_map[" + std::to_string(e) + "]";
      const int id = int_field(pm[e], "id", f);
      if (id < 1 || static_cast<std::size_t>(id) > pm.size()) schema_error(f + ".id", "out of range");
      if (seen[static_cast<std::size_t>(id - 1)]) schema_error(f + ".id", "duplicate id " + std::to_string(id));
      seen[static_cast<std::size_t>(id - 1)] = true;
      pairs[static_cast<std::size_t>(id - 1)] = PointPair{int_field(pm[e], "from", f), int_field(pm[e], "to", f)};
    }
    inst.path_map = PathIndexMap::from_pairs(inst.points, std::move(pairs));
  } else {
    schema_error("path_map", "expected \"canonical\" or an array");
  }

  if (!doc.contains("demand_mass")) schema_error("demand_mass", "missing");
  const auto mass = rational_array(doc.at("demand_mass"), "demand_mass", static_cast<std::size_t>(inst.points));
  const bool has_volume = doc.contains("demand_volume") && !doc.at("demand_volume").is_null();
  std::vector<Rational> volume(static_cast<std::size_t>(inst.points), Rational(0));
  if (has_volume) {
    volume = rational_array(doc.at("demand_volume"), "demand_volume", static_cast<std::size_t>(inst.points));
  }
  if (mass[0] != 0) schema_error("demand_mass[0]", "depot demand must be zero");
  if (volume[0] != 0) schema_error("demand_volume[0]", "depot demand must be zero");
  for (int j = 0; j < inst.points; ++j) {
    inst.demands.push_back(Demand{mass[static_cast<std::size_t>(j)], volume[static_cast<std::size_t>(j)]});
  }

  if (!doc.contains("vehicles") || !doc.at("vehicles").is_array() || doc.at("vehicles").empty()) {
    schema_error("vehicles", "expected a non-empty array");
  }
  const json& vehicles = doc.at("vehicles");
  const std::size_t k_count = vehicles.size();
  std::vector<json> raw_costs(k_count);
  std::vector<std::string> cost_fields(k_count);
  inst.fleet.resize(k_count);
  std::vector<bool> seen(k_count, false);
  for (std::size_t e = 0; e < k_count; ++e) {
    const std::string f = "vehicles[" + std::to_string(e) + "]";
    const json& v = vehicles[e];
    const int id = int_field(v, "id", f);
    if (id < 1 || static_cast<std::size_t>(id) > k_count) schema_error(f + ".id", "must lie in [1, K]");
    const auto slot = static_cast<std::size_t>(id - 1);
    if (seen[slot]) schema_error(f + ".id", "duplicate vehicle id " + std::to_string(id));
    seen[slot] = true;
    Vehicle& veh = inst.fleet[slot];
    veh.id = id;
    veh.mass_capacity = capacity_from_json(v, "mass_capacity", f + ".mass_capacity");
    veh.volume_capacity = has_volume ? capacity_from_json(v, "volume_capacity", f + ".volume_capacity") : std::nullopt;
    if (!v.contains("costs")) schema_error(f + ".costs", "missing");
    raw_costs[slot] = v.at("costs");
    cost_fields[slot] = f + ".costs";
  }
  auto costs = resolve_scaled_vectors(raw_costs, cost_fields, paths);
  for (std::size_t k = 0; k < k_count; ++k) inst.fleet[k].costs = std::move(costs[k]);

  inst.validate();
  return inst;
}

}  // namespace detail

Instance load_instance(std::string_view json_text) {
  return detail::instance_from_json(detail::parse_document(json_text));
}

Instance load_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kSchema, "cannot open instance file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_instance(buf.str());
}

// ---------------------------------------------------------------------------
// Incidence

IncidenceMatrix::IncidenceMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), cells_(static_cast<std::size_t>(rows) * cols, 0) {}

void IncidenceMatrix::set(PointId point, PathId path, bool value) {
  cells_[static_cast<std::size_t>((point - 1) * cols_ + (path - 1))] = value ? 1 : 0;
}

int IncidenceMatrix::column_degree(PathId path) const {
  int sum = 0;
  for (PointId j = 1; j <= rows_; ++j) sum += at(j, path);
  return sum;
}

int IncidenceMatrix::row_degree(PointId point) const {
  int sum = 0;
  for (PathId i = 1; i <= cols_; ++i) sum += at(point, i);
  return sum;
}

std::vector<std::int64_t> IncidenceMatrix::apply(std::span<const int> x) const {
  if (static_cast<int>(x.size()) != cols_) {
    throw Error(ErrorKind::kInvalidQuery, "route vector length " + std::to_string(x.size()) + " != " +
                                              std::to_string(cols_));
  }
  std::vector<std::int64_t> out(static_cast<std::size_t>(rows_), 0);
  for (PointId j = 1; j <= rows_; ++j) {
    for (PathId i = 1; i <= cols_; ++i) {
      if (at(j, i)) out[static_cast<std::size_t>(j - 1)] += x[static_cast<std::size_t>(i - 1)];
    }
  }
  return out;
}

IncidenceMatrix build_incidence(const PathIndexMap& map) {
  IncidenceMatrix pi(map.points(), map.paths());
  for (PathId i = 1; i <= map.paths(); ++i) {
    const PointPair p = map.endpoints(i);
    pi.set(p.lo, i, true);
    pi.set(p.hi, i, true);
  }
  return pi;
}

}  // namespace mtsp
