#include "mtsp/router.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>

#include "mtsp/errors.hpp"

namespace mtsp {
namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

int local_index(const TspProblem& problem, PointId p) {
  auto it = std::lower_bound(problem.points.begin(), problem.points.end(), p);
  if (it == problem.points.end() || *it != p) return -1;
  return static_cast<int>(it - problem.points.begin());
}

Tour forced_tour(const TspProblem& problem) {
  Tour t{problem.vehicle, {kDepot}, Rational(0)};
  if (problem.size() == 2) {
    t.sequence = {kDepot, problem.points[1], kDepot};
    t.cost = problem.costs(0, 1) * 2;
  }
  return t;
}

// Lower bound on the cost of a path that leaves `current`, visits every open
// vertex and ends at the depot (vertex 0). Each open vertex contributes its
// two cheapest edges into open ∪ {current, depot}; current and the depot
// contribute their cheapest edge into the open set. Every remaining edge is
// counted from both of its ends, hence the halving.
Rational remaining_bound(const RationalMatrix& c, int current, const std::vector<int>& open) {
  if (open.empty()) return c(current, 0);
  Rational sum;
  auto cheapest_into_open = [&](int from) {
    std::optional<Rational> best;
    for (int u : open) {
      if (!best || c(from, u) < *best) best = c(from, u);
    }
    return *best;
  };
  if (current == 0) {
    // Closing a full cycle: the depot needs two edges into the open set.
    std::optional<Rational> first;
    std::optional<Rational> second;
    for (int u : open) {
      const Rational& w = c(0, u);
      if (!first || w < *first) {
        second = first;
        first = w;
      } else if (!second || w < *second) {
        second = w;
      }
    }
    sum += *first + (second ? *second : *first);
  } else {
    sum += cheapest_into_open(current) + cheapest_into_open(0);
  }
  for (int u : open) {
    std::optional<Rational> first;
    std::optional<Rational> second;
    auto consider = [&](int w) {
      const Rational& x = c(u, w);
      if (!first || x < *first) {
        second = first;
        first = x;
      } else if (!second || x < *second) {
        second = x;
      }
    };
    for (int w : open) {
      if (w != u) consider(w);
    }
    consider(0);
    if (current != 0) consider(current);
    sum += *first + (second ? *second : *first);
  }
  return sum / 2;
}

bool better_tour(const Rational& cost, const std::vector<PointId>& seq, const std::optional<Tour>& best) {
  if (!best) return true;
  if (cost != best->cost) return cost < best->cost;
  return seq < best->sequence;
}

}  // namespace

TspProblem make_tsp_problem(const Instance& instance, int vehicle, std::span<const PointId> points) {
  TspProblem problem;
  problem.vehicle = vehicle;
  problem.points.assign(points.begin(), points.end());
  problem.points.push_back(kDepot);
  std::sort(problem.points.begin(), problem.points.end());
  problem.points.erase(std::unique(problem.points.begin(), problem.points.end()), problem.points.end());
  for (PointId p : problem.points) {
    if (p < 1 || p > instance.points) throw Error(ErrorKind::kInvalidQuery, "point " + std::to_string(p) + " out of range");
  }
  const int n = problem.size();
  problem.costs = RationalMatrix(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const Rational& w = pair_cost(instance, vehicle, problem.points[idx(a)], problem.points[idx(b)]);
      problem.costs(a, b) = w;
      problem.costs(b, a) = w;
    }
  }
  return problem;
}

Rational tour_cost(const TspProblem& problem, std::span<const PointId> sequence) {
  const int n = problem.size();
  if (n == 1 && sequence.size() == 1 && sequence[0] == kDepot) return Rational(0);
  if (static_cast<int>(sequence.size()) != n + 1 || sequence.front() != kDepot || sequence.back() != kDepot) {
    throw Error(ErrorKind::kInvalidTour, "sequence " + format_sequence(sequence) + " is not a closed tour of " +
                                             std::to_string(n) + " points from the depot");
  }
  std::vector<bool> seen(idx(n), false);
  std::vector<int> local;
  for (std::size_t s = 0; s + 1 < sequence.size(); ++s) {
    const int l = local_index(problem, sequence[s]);
    if (l < 0 || seen[idx(l)]) {
      throw Error(ErrorKind::kInvalidTour, "sequence " + format_sequence(sequence) + " repeats or leaves the point set");
    }
    seen[idx(l)] = true;
    local.push_back(l);
  }
  local.push_back(0);
  Rational cost;
  for (std::size_t s = 0; s + 1 < local.size(); ++s) cost += problem.costs(local[s], local[s + 1]);
  return cost;
}

std::vector<PointId> canonical_direction(std::vector<PointId> sequence) {
  if (sequence.size() >= 4 && sequence[1] > sequence[sequence.size() - 2]) {
    std::reverse(sequence.begin(), sequence.end());
  }
  return sequence;
}

Rational tsp_root_bound(const TspProblem& problem) {
  if (problem.size() <= 2) return forced_tour(problem).cost;
  std::vector<int> open(idx(problem.size() - 1));
  std::iota(open.begin(), open.end(), 1);
  return remaining_bound(problem.costs, 0, open);
}

Tour solve_tsp(const TspProblem& problem) {
  const int n = problem.size();
  if (n == 0 || problem.points.front() != kDepot) {
    throw Error(ErrorKind::kInvalidQuery, "routing problem must contain the depot");
  }
  if (n <= 2) return forced_tour(problem);

  const RationalMatrix& c = problem.costs;
  std::optional<Tour> best;
  std::vector<int> path{0};
  std::vector<bool> used(idx(n), false);
  used[0] = true;

  auto search = [&](auto&& self, const Rational& partial) -> void {
    const int current = path.back();
    std::vector<int> open;
    for (int v = 1; v < n; ++v) {
      if (!used[idx(v)]) open.push_back(v);
    }
    if (open.empty()) {
      const Rational total = partial + c(current, 0);
      std::vector<PointId> seq;
      for (int v : path) seq.push_back(problem.points[idx(v)]);
      seq.push_back(kDepot);
      seq = canonical_direction(std::move(seq));
      if (better_tour(total, seq, best)) best = Tour{problem.vehicle, std::move(seq), total};
      return;
    }
    if (best && partial + remaining_bound(c, current, open) > best->cost) return;

    std::stable_sort(open.begin(), open.end(), [&](int a, int b) { return c(current, a) < c(current, b); });
    for (int v : open) {
      const Rational next = partial + c(current, v);
      if (best && next > best->cost) continue;
      used[idx(v)] = true;
      path.push_back(v);
      self(self, next);
      path.pop_back();
      used[idx(v)] = false;
    }
  };
  search(search, Rational(0));
  return *best;
}

Tour oracle_tsp(const TspProblem& problem) {
  const int n = problem.size();
  if (n > kTspOracleMaxPoints) {
    throw Error(ErrorKind::kOracleLimit, std::to_string(n) + " points exceed the tour enumeration limit of " +
                                             std::to_string(kTspOracleMaxPoints));
  }
  if (n == 0 || problem.points.front() != kDepot) {
    throw Error(ErrorKind::kInvalidQuery, "routing problem must contain the depot");
  }
  if (n <= 2) return forced_tour(problem);

  // Bring every cost onto a common denominator so the enumeration runs on
  // plain integers.
  std::int64_t scale = 1;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      const std::int64_t den = problem.costs(a, b).den();
      scale = (Rational(scale / std::gcd(scale, den)) * Rational(den)).num();
    }
  }
  std::vector<std::int64_t> w(idx(n * n), 0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b) w[idx(a * n + b)] = (problem.costs(a, b) * scale).num();
    }
  }

  std::vector<int> perm(idx(n - 1));
  std::iota(perm.begin(), perm.end(), 1);
  std::optional<std::int64_t> best;
  std::vector<int> best_perm;
  do {
    if (perm.front() > perm.back()) continue;
    std::int64_t total = w[idx(perm.front())] + w[idx(perm.back() * n)];
    for (std::size_t s = 0; s + 1 < perm.size(); ++s) total += w[idx(perm[s] * n + perm[s + 1])];
    if (!best || total < *best) {
      best = total;
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  Tour t{problem.vehicle, {kDepot}, Rational(*best, scale)};
  for (int v : best_perm) t.sequence.push_back(problem.points[idx(v)]);
  t.sequence.push_back(kDepot);
  return t;
}

std::vector<int> tour_to_route_vector(const Tour& tour, const PathIndexMap& map) {
  std::vector<int> x(idx(map.paths()), 0);
  for (std::size_t s = 0; s + 1 < tour.sequence.size(); ++s) {
    ++x[idx(map.id_of(tour.sequence[s], tour.sequence[s + 1]) - 1)];
  }
  return x;
}

std::string format_sequence(std::span<const PointId> sequence) {
  std::string out;
  for (std::size_t s = 0; s < sequence.size(); ++s) {
    if (s) out += "-";
    out += std::to_string(sequence[s]);
  }
  return out;
}

}  // namespace mtsp
