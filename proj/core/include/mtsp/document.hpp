#pragma once

// Instance documents: an instance plus optional named scenarios, optional
// externally supplied assignment coefficients, and published reference
// results for the bundled example.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mtsp/instance.hpp"
#include "mtsp/rational.hpp"

namespace mtsp {

/// Reference results printed for a scenario. Routes use the "1-7-10-11-1"
/// notation; an unused vehicle has an empty route string.
struct PublishedResult {
  std::optional<Rational> total;
  std::map<int, std::string> routes;
  std::map<int, std::vector<PointId>> partition;
};

/// Capacity and demand overrides applied on top of a loaded instance. An
/// absent override keeps the instance's value.
struct Scenario {
  std::string name;
  std::string description;
  std::optional<std::vector<Capacity>> mass_capacity;
  std::optional<std::vector<Capacity>> volume_capacity;
  std::optional<std::vector<Rational>> demand_mass;
  std::optional<std::vector<Rational>> demand_volume;
  std::optional<PublishedResult> published;
};

inline constexpr std::string_view kAsLoadedScenario = "as_loaded";
inline constexpr std::string_view kUnconstrainedScenario = "unconstrained";

struct InstanceDocument {
  std::string name;
  Instance instance;
  /// m_override[k][j - 1]: externally supplied coefficient of vehicle k+1 for
  /// point j (depot entry is zero).
  std::optional<std::vector<std::vector<Rational>>> m_override;
  std::vector<Scenario> scenarios;

  /// Named scenario from the document; "as_loaded" and "unconstrained" are
  /// always available. Throws invalid-query for unknown names.
  Scenario scenario(std::string_view name) const;
};

InstanceDocument load_document(std::string_view json_text);
InstanceDocument load_document_file(const std::filesystem::path& path);

/// The bundled eleven-point, three-vehicle example (compiled in).
const InstanceDocument& bundled_document();
std::string_view bundled_document_text();

/// Instance with the scenario's overrides applied and re-validated.
Instance apply_scenario(const Instance& instance, const Scenario& scenario);

}  // namespace mtsp
