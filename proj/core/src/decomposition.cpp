#include "mtsp/decomposition.hpp"

#include <algorithm>
#include <string>

#include "mtsp/errors.hpp"

namespace mtsp {
namespace {

std::string join_ids(std::span<const PathId> ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(ids[i]);
  }
  return out;
}

void require_length(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw Error(ErrorKind::kInvalidQuery, std::string(what) + " has length " + std::to_string(got) +
                                              ", expected " + std::to_string(want));
  }
}

}  // namespace

bool RouteVector::empty() const {
  return std::all_of(x.begin(), x.end(), [](int v) { return v == 0; });
}

std::vector<PathId> select_a_set(const PathIndexMap& map) {
  const int n = map.points();
  if (n < 3) {
    throw Error(ErrorKind::kDecompositionNotApplicable,
                "the A-set needs at least 3 points, got " + std::to_string(n));
  }
  std::vector<PathId> ids;
  if (n % 2 == 1) {
    for (PointId j = 1; j < n; ++j) ids.push_back(map.id_of(j, j + 1));
    ids.push_back(map.id_of(n, 1));
  } else {
    ids = {map.id_of(1, 2), map.id_of(2, 3), map.id_of(3, 1)};
    for (PointId j = 3; j < n; ++j) ids.push_back(map.id_of(j, j + 1));
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<PathId> select_a_set(const Instance& instance) { return select_a_set(instance.path_map); }

ABPartition partition_incidence(const IncidenceMatrix& incidence, std::span<const PathId> a_ids) {
  const int n = incidence.rows();
  const int paths = incidence.cols();
  if (static_cast<int>(a_ids.size()) != n) {
    throw Error(ErrorKind::kInvalidQuery, "A-set has " + std::to_string(a_ids.size()) + " paths, expected " +
                                              std::to_string(n));
  }
  std::vector<bool> in_a(static_cast<std::size_t>(paths) + 1, false);
  for (PathId id : a_ids) {
    if (id < 1 || id > paths) throw Error(ErrorKind::kInvalidQuery, "A-set path id out of range");
    if (in_a[static_cast<std::size_t>(id)]) throw Error(ErrorKind::kInvalidQuery, "A-set repeats a path id");
    in_a[static_cast<std::size_t>(id)] = true;
  }

  ABPartition part;
  part.a_ids.assign(a_ids.begin(), a_ids.end());
  for (PathId id = 1; id <= paths; ++id) {
    if (!in_a[static_cast<std::size_t>(id)]) part.b_ids.push_back(id);
  }
  part.pa = IntMatrix(n, n);
  part.pb = IntMatrix(n, static_cast<int>(part.b_ids.size()));
  for (PointId j = 1; j <= n; ++j) {
    for (int c = 0; c < n; ++c) part.pa(j - 1, c) = incidence.at(j, part.a_ids[static_cast<std::size_t>(c)]);
    for (int c = 0; c < part.pb.cols(); ++c) {
      part.pb(j - 1, c) = incidence.at(j, part.b_ids[static_cast<std::size_t>(c)]);
    }
  }
  auto inverse = invert_exact(part.pa);
  if (!inverse) {
    throw SingularPartitionError(part.a_ids, "incidence block for A-set [" + join_ids(part.a_ids) +
                                                 "] is singular");
  }
  part.pa_inverse = std::move(*inverse);
  return part;
}

SplitCosts split_cost_vector(std::span<const Rational> costs, const ABPartition& partition) {
  require_length(costs.size(), partition.a_ids.size() + partition.b_ids.size(), "cost vector");
  SplitCosts out;
  for (PathId id : partition.a_ids) out.t_a.push_back(costs[static_cast<std::size_t>(id - 1)]);
  for (PathId id : partition.b_ids) out.t_b.push_back(costs[static_cast<std::size_t>(id - 1)]);
  return out;
}

MCoefficients compute_m(std::span<const Rational> t_a, const ABPartition& partition, int vehicle) {
  const int n = partition.points();
  require_length(t_a.size(), static_cast<std::size_t>(n), "t_a");
  MCoefficients m{vehicle, std::vector<Rational>(static_cast<std::size_t>(n))};
  for (int col = 0; col < n; ++col) {
    Rational acc;
    for (int row = 0; row < n; ++row) acc += t_a[static_cast<std::size_t>(row)] * partition.pa_inverse(row, col);
    m.values[static_cast<std::size_t>(col)] = acc * 2;
  }
  return m;
}

MCoefficients compute_m_closed_form(std::span<const Rational> t_a, std::span<const PointPair> a_edges,
                                    int vehicle) {
  const int n = static_cast<int>(a_edges.size());
  require_length(t_a.size(), a_edges.size(), "t_a");
  if (n < 3 || n % 2 == 0) {
    throw Error(ErrorKind::kClosedFormNotApplicable,
                "closed form needs an odd cycle, got " + std::to_string(n) + " points");
  }
  // incident[p] holds the two A-edge indices touching point p.
  std::vector<std::vector<int>> incident(static_cast<std::size_t>(n) + 1);
  for (int e = 0; e < n; ++e) {
    const PointPair pp = a_edges[static_cast<std::size_t>(e)];
    if (pp.lo < 1 || pp.hi > n || pp.lo == pp.hi) {
      throw Error(ErrorKind::kClosedFormNotApplicable, "A-edge endpoints out of range");
    }
    incident[static_cast<std::size_t>(pp.lo)].push_back(e);
    incident[static_cast<std::size_t>(pp.hi)].push_back(e);
  }
  for (PointId p = 1; p <= n; ++p) {
    if (incident[static_cast<std::size_t>(p)].size() != 2) {
      throw Error(ErrorKind::kClosedFormNotApplicable, "A-set is not a Hamiltonian cycle");
    }
  }

  // Walk the cycle from the depot: cycle_edges[s] joins stops s and s+1.
  std::vector<PointId> stops{kDepot};
  std::vector<int> cycle_edges;
  int edge = incident[kDepot][0];
  for (int step = 0; step < n; ++step) {
    cycle_edges.push_back(edge);
    const PointPair pp = a_edges[static_cast<std::size_t>(edge)];
    const PointId next = pp.lo == stops.back() ? pp.hi : pp.lo;
    if (step + 1 < n) {
      stops.push_back(next);
      const auto& inc = incident[static_cast<std::size_t>(next)];
      edge = inc[0] == edge ? inc[1] : inc[0];
    } else if (next != kDepot) {
      throw Error(ErrorKind::kClosedFormNotApplicable, "A-set is not a single cycle");
    }
  }
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (PointId p : stops) {
    if (seen[static_cast<std::size_t>(p)]) throw Error(ErrorKind::kClosedFormNotApplicable, "A-set is not a single cycle");
    seen[static_cast<std::size_t>(p)] = true;
  }

  MCoefficients m{vehicle, std::vector<Rational>(static_cast<std::size_t>(n))};
  for (int s = 0; s < n; ++s) {
    Rational acc;
    for (int step = 0; step < n; ++step) {
      const auto& cost = t_a[static_cast<std::size_t>(cycle_edges[static_cast<std::size_t>((s + step) % n)])];
      if (step % 2 == 0) {
        acc += cost;
      } else {
        acc -= cost;
      }
    }
    m.values[static_cast<std::size_t>(stops[static_cast<std::size_t>(s)] - 1)] = acc;
  }
  return m;
}

std::vector<Rational> recover_xa(std::span<const int> p, std::span<const int> x_b, const ABPartition& partition) {
  const int n = partition.points();
  require_length(p.size(), static_cast<std::size_t>(n), "visit vector");
  require_length(x_b.size(), partition.b_ids.size(), "x_b");
  // rhs = 2p - Pi^B x_b, then x_a = (Pi^A)^-1 rhs.
  std::vector<Rational> rhs(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    std::int64_t v = 2 * static_cast<std::int64_t>(p[static_cast<std::size_t>(j)]);
    for (int c = 0; c < partition.pb.cols(); ++c) v -= partition.pb(j, c) * x_b[static_cast<std::size_t>(c)];
    rhs[static_cast<std::size_t>(j)] = Rational(v);
  }
  std::vector<Rational> x_a(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    Rational acc;
    for (int c = 0; c < n; ++c) acc += partition.pa_inverse(r, c) * rhs[static_cast<std::size_t>(c)];
    x_a[static_cast<std::size_t>(r)] = acc;
  }
  return x_a;
}

std::vector<int> a_part(std::span<const int> x, const ABPartition& partition) {
  std::vector<int> out;
  for (PathId id : partition.a_ids) out.push_back(x[static_cast<std::size_t>(id - 1)]);
  return out;
}

std::vector<int> b_part(std::span<const int> x, const ABPartition& partition) {
  std::vector<int> out;
  for (PathId id : partition.b_ids) out.push_back(x[static_cast<std::size_t>(id - 1)]);
  return out;
}

std::vector<int> visit_vector(const RouteVector& route, const ABPartition& partition) {
  const int n = partition.points();
  require_length(route.x.size(), partition.a_ids.size() + partition.b_ids.size(), "route vector");
  const auto xa = a_part(route.x, partition);
  const auto xb = b_part(route.x, partition);
  std::vector<int> p(static_cast<std::size_t>(n));
  if (route.empty()) {
    p[0] = 1;  // an unused vehicle still "visits" the depot
    return p;
  }
  for (int j = 0; j < n; ++j) {
    std::int64_t deg = 0;
    for (int c = 0; c < n; ++c) deg += partition.pa(j, c) * xa[static_cast<std::size_t>(c)];
    for (int c = 0; c < partition.pb.cols(); ++c) deg += partition.pb(j, c) * xb[static_cast<std::size_t>(c)];
    if (deg != 0 && deg != 2) {
      throw Error(ErrorKind::kInvalidRoute, "vehicle " + std::to_string(route.vehicle) + ": point " +
                                                std::to_string(j + 1) + " has degree " + std::to_string(deg));
    }
    p[static_cast<std::size_t>(j)] = static_cast<int>(deg / 2);
  }
  if (p[0] != 1) {
    throw Error(ErrorKind::kInvalidRoute, "vehicle " + std::to_string(route.vehicle) + " route misses the depot");
  }
  return p;
}

ObjectiveBreakdown objective_split(std::span<const RouteVector> routes, std::span<const MCoefficients> m,
                                   const ABPartition& partition,
                                   std::span<const std::vector<Rational>> costs) {
  require_length(m.size(), routes.size(), "coefficient list");
  require_length(costs.size(), routes.size(), "cost list");
  const int n = partition.points();
  const int nb = static_cast<int>(partition.b_ids.size());

  ObjectiveBreakdown out;
  for (std::size_t k = 0; k < routes.size(); ++k) {
    const RouteVector& route = routes[k];
    if (route.empty()) continue;
    const auto p = visit_vector(route, partition);
    const auto split = split_cost_vector(costs[k], partition);
    require_length(m[k].values.size(), static_cast<std::size_t>(n), "M vector");

    for (int j = 0; j < n; ++j) {
      if (p[static_cast<std::size_t>(j)]) out.l_star += m[k].values[static_cast<std::size_t>(j)];
    }

    // Reduced B-costs: t_b - t_a (Pi^A)^-1 Pi^B.
    std::vector<Rational> t_a_inv(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
      for (int r = 0; r < n; ++r) t_a_inv[static_cast<std::size_t>(c)] += split.t_a[static_cast<std::size_t>(r)] * partition.pa_inverse(r, c);
    }
    const auto xb = b_part(route.x, partition);
    for (int c = 0; c < nb; ++c) {
      if (xb[static_cast<std::size_t>(c)] == 0) continue;
      Rational reduced = split.t_b[static_cast<std::size_t>(c)];
      for (int j = 0; j < n; ++j) {
        if (partition.pb(j, c)) reduced -= t_a_inv[static_cast<std::size_t>(j)];
      }
      out.l_zero += reduced * xb[static_cast<std::size_t>(c)];
    }

    for (std::size_t i = 0; i < route.x.size(); ++i) {
      if (route.x[i]) out.total += costs[k][i] * route.x[i];
    }
  }
  return out;
}

Decomposition decompose(const Instance& instance) {
  Decomposition d;
  d.incidence = build_incidence(instance.path_map);
  d.partition = partition_incidence(d.incidence, select_a_set(instance));
  for (const Vehicle& v : instance.fleet) {
    const auto split = split_cost_vector(v.costs, d.partition);
    d.m.push_back(compute_m(split.t_a, d.partition, v.id));
  }
  return d;
}

}  // namespace mtsp
