#pragma once

// Incidence-matrix decomposition of the routing objective.
//
// The J paths of the A-set form a square, invertible block Pi^A of the
// incidence matrix; the remaining I - J paths form Pi^B. For a closed tour x
// through the visit set P we have Pi x = 2P, hence
//
//   x^A = 2 (Pi^A)^-1 P - (Pi^A)^-1 Pi^B x^B
//
// and the tour cost T x splits into L* = M P, with M = 2 T^A (Pi^A)^-1, plus a
// residual L0 that depends only on x^B.

#include <span>
#include <utility>
#include <vector>

#include "mtsp/exact_matrix.hpp"
#include "mtsp/instance.hpp"
#include "mtsp/rational.hpp"

namespace mtsp {

struct ABPartition {
  std::vector<PathId> a_ids;  // J ids, defines the column order of pa
  std::vector<PathId> b_ids;  // I - J ids, ascending
  IntMatrix pa;               // J x J
  IntMatrix pb;               // J x (I - J)
  RationalMatrix pa_inverse;  // J x J, exact

  int points() const noexcept { return pa.rows(); }
};

/// Per-point surrogate visit costs for one vehicle (index: point - 1).
struct MCoefficients {
  int vehicle = 0;
  std::vector<Rational> values;
};

/// Path multiplicities of one vehicle's route (index: path id - 1).
/// A tour uses each of its edges once, except the out-and-back tour 1-j-1,
/// which uses {1, j} twice. An unused vehicle has the zero vector.
struct RouteVector {
  int vehicle = 0;
  std::vector<int> x;

  bool empty() const;
};

struct ObjectiveBreakdown {
  Rational l_star;
  Rational l_zero;
  Rational total;
};

struct SplitCosts {
  std::vector<Rational> t_a;
  std::vector<Rational> t_b;
};

/// A-set for the instance's point count, as path ids in ascending order.
/// Odd J: the Hamiltonian cycle 1-2-...-J-1. Even J: triangle {1,2},{2,3},{3,1}
/// plus the chain {3,4},...,{J-1,J}. Both have a single odd cycle and hence
/// an invertible incidence block. Throws decomposition-not-applicable for
/// J < 3.
std::vector<PathId> select_a_set(const PathIndexMap& map);
std::vector<PathId> select_a_set(const Instance& instance);

/// Throws SingularPartitionError if Pi^A has no inverse.
ABPartition partition_incidence(const IncidenceMatrix& incidence, std::span<const PathId> a_ids);

SplitCosts split_cost_vector(std::span<const Rational> costs, const ABPartition& partition);

/// M = 2 t_a (Pi^A)^-1.
MCoefficients compute_m(std::span<const Rational> t_a, const ABPartition& partition, int vehicle = 0);

/// Inversion-free M for an odd Hamiltonian-cycle A-set. Walking the cycle
/// from point p, M_p is the alternating sum of the edge costs met on the way
/// round, starting and ending with the two edges at p. `a_edges[i]` are the
/// endpoints of the path whose cost is t_a[i]. Throws
/// closed-form-not-applicable unless the edges form a single odd cycle
/// through all points.
MCoefficients compute_m_closed_form(std::span<const Rational> t_a, std::span<const PointPair> a_edges,
                                    int vehicle = 0);

/// x^A = 2 (Pi^A)^-1 p - (Pi^A)^-1 Pi^B x^B.
std::vector<Rational> recover_xa(std::span<const int> p, std::span<const int> x_b, const ABPartition& partition);

std::vector<int> a_part(std::span<const int> x, const ABPartition& partition);
std::vector<int> b_part(std::span<const int> x, const ABPartition& partition);

/// Visit vector implied by a route (Pi x / 2). Throws invalid-route when the
/// route is not a closed tour through the depot. An empty route maps to the
/// depot-only visit vector.
std::vector<int> visit_vector(const RouteVector& route, const ABPartition& partition);

/// Splits sum_k T_k x_k into L* = sum_k M_k P_k and L0 = sum_k (T^B_k -
/// T^A_k (Pi^A)^-1 Pi^B) x^B_k. Empty routes contribute nothing to any part.
/// `m[k]` and `costs[k]` belong to `routes[k]`. The identity total = L* + L0
/// holds exactly when every m[k] is the derived compute_m of costs[k].
ObjectiveBreakdown objective_split(std::span<const RouteVector> routes, std::span<const MCoefficients> m,
                                   const ABPartition& partition,
                                   std::span<const std::vector<Rational>> costs);

/// Partition plus derived coefficients for every vehicle of an instance.
struct Decomposition {
  IncidenceMatrix incidence;
  ABPartition partition;
  std::vector<MCoefficients> m;  // m[k] for vehicle k + 1
};

Decomposition decompose(const Instance& instance);

}  // namespace mtsp
