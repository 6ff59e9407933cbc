#pragma once

// Problem data model: points, the point-pair <-> path-id enumeration, the
// point/path incidence matrix, and instance ingestion.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mtsp/rational.hpp"

namespace mtsp {

/// Points are numbered 1..J; point 1 is always the depot.
using PointId = int;
/// Paths (unordered point pairs) are numbered 1..I.
using PathId = int;

inline constexpr PointId kDepot = 1;

/// Unordered pair of distinct points, stored with lo < hi.
struct PointPair {
  PointId lo = 0;
  PointId hi = 0;

  static PointPair of(PointId a, PointId b) { return a < b ? PointPair{a, b} : PointPair{b, a}; }
  bool contains(PointId p) const { return lo == p || hi == p; }
  friend bool operator==(const PointPair&, const PointPair&) = default;
};

/// I = J(J-1)/2. Throws invalid-instance for J < 2.
std::int64_t path_count(int points);

/// Bijection between path ids 1..I and unordered point pairs of 1..J.
class PathIndexMap {
 public:
  PathIndexMap() = default;

  /// `by_id[i]` is the pair for path id i+1. Validates the bijection; throws
  /// schema errors on self-pairs, out-of-range points, duplicates, or a
  /// length different from J(J-1)/2.
  static PathIndexMap from_pairs(int points, std::vector<PointPair> by_id);

  int points() const noexcept { return points_; }
  int paths() const noexcept { return static_cast<int>(pairs_.size()); }

  PointPair endpoints(PathId id) const;
  /// Throws invalid-query when a == b or either point is out of range.
  PathId id_of(PointId a, PointId b) const;

  friend bool operator==(const PathIndexMap& lhs, const PathIndexMap& rhs) {
    return lhs.points_ == rhs.points_ && lhs.pairs_ == rhs.pairs_;
  }

 private:
  int points_ = 0;
  std::vector<PointPair> pairs_;  // index: id - 1
  std::vector<PathId> lookup_;    // index: (lo - 1) * J + (hi - 1)
};

/// Cycle edges first ({1,J}, {1,2}, {2,3}, ..., {J-1,J}), then the remaining
/// pairs in lexicographic order.
PathIndexMap canonical_path_map(int points);

/// The 11-point enumeration used by the bundled example instance.
PathIndexMap table5_path_map();

struct Demand {
  Rational mass;
  Rational volume;
};

/// nullopt means unbounded.
using Capacity = std::optional<Rational>;

bool within(const Rational& load, const Capacity& capacity);

struct Vehicle {
  int id = 0;
  Capacity mass_capacity;
  Capacity volume_capacity;
  std::vector<Rational> costs;  // length I, indexed by path id - 1
};

struct Instance {
  int points = 0;
  PathIndexMap path_map;
  std::vector<Demand> demands;  // index: point - 1
  std::vector<Vehicle> fleet;   // fleet[k].id == k + 1

  int paths() const noexcept { return path_map.paths(); }
  int vehicles() const noexcept { return static_cast<int>(fleet.size()); }
  const Vehicle& vehicle(int id) const;
  const Demand& demand(PointId p) const { return demands.at(static_cast<std::size_t>(p - 1)); }

  /// Checks every structural invariant; throws invalid-instance.
  void validate() const;
};

/// Cost of moving vehicle `vehicle` along the path joining a and b.
/// Symmetric in (a, b); throws invalid-query when a == b.
const Rational& pair_cost(const Instance& instance, int vehicle, PointId a, PointId b);

/// Parses and validates an instance document (JSON). Throws schema errors
/// naming the offending field.
Instance load_instance(std::string_view json_text);
Instance load_instance_file(const std::filesystem::path& path);

/// Point/path incidence matrix: entry (j, i) is 1 iff point j is an endpoint
/// of path i.
class IncidenceMatrix {
 public:
  IncidenceMatrix() = default;
  IncidenceMatrix(int rows, int cols);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  /// 1-based point and path ids.
  bool at(PointId point, PathId path) const {
    return cells_[static_cast<std::size_t>((point - 1) * cols_ + (path - 1))] != 0;
  }
  void set(PointId point, PathId path, bool value);

  /// Column sum, row sum.
  int column_degree(PathId path) const;
  int row_degree(PointId point) const;

  /// Pi * x for an integer multiplicity vector of length I.
  std::vector<std::int64_t> apply(std::span<const int> x) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::uint8_t> cells_;
};

IncidenceMatrix build_incidence(const PathIndexMap& map);

}  // namespace mtsp
