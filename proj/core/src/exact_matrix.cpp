#include "mtsp/exact_matrix.hpp"

#include <limits>
#include <stdexcept>
#include <utility>

namespace mtsp {
namespace {

__extension__ using Wide = __int128;

std::int64_t narrow(Wide v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("integer overflow during fraction-free elimination");
  }
  return static_cast<std::int64_t>(v);
}

Wide wide_abs(Wide v) { return v < 0 ? -v : v; }

struct Elimination {
  IntMatrix work;  // upper triangular in the first n columns on success
  bool singular = false;
  int swaps = 0;
};

// Bareiss elimination over the first n columns of an n x m matrix.
Elimination bareiss(IntMatrix work) {
  const int n = work.rows();
  const int m = work.cols();
  Elimination out;
  std::int64_t previous = 1;
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    for (int r = k + 1; r < n; ++r) {
      if (wide_abs(work(r, k)) > wide_abs(work(pivot, k))) pivot = r;
    }
    if (work(pivot, k) == 0) {
      out.singular = true;
      out.work = std::move(work);
      return out;
    }
    if (pivot != k) {
      for (int c = 0; c < m; ++c) std::swap(work(k, c), work(pivot, c));
      ++out.swaps;
    }
    for (int r = k + 1; r < n; ++r) {
      for (int c = k + 1; c < m; ++c) {
        Wide v = Wide{work(r, c)} * work(k, k) - Wide{work(r, k)} * work(k, c);
        work(r, c) = narrow(v / previous);
      }
      work(r, k) = 0;
    }
    previous = work(k, k);
  }
  out.work = std::move(work);
  return out;
}

}  // namespace

RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) out(r, c) = Rational(m(r, c));
  }
  return out;
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix dimension mismatch");
  RationalMatrix out(a.rows(), b.cols());
  for (int r = 0; r < a.rows(); ++r) {
    for (int k = 0; k < a.cols(); ++k) {
      if (a(r, k) == 0) continue;
      for (int c = 0; c < b.cols(); ++c) out(r, c) += a(r, k) * b(k, c);
    }
  }
  return out;
}

std::optional<RationalMatrix> invert_exact(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("cannot invert a non-square matrix");
  const int n = a.rows();
  IntMatrix augmented(n, 2 * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) augmented(r, c) = a(r, c);
    augmented(r, n + r) = 1;
  }
  Elimination elim = bareiss(std::move(augmented));
  if (elim.singular) return std::nullopt;

  const IntMatrix& u = elim.work;
  RationalMatrix inverse(n, n);
  for (int col = 0; col < n; ++col) {
    for (int i = n - 1; i >= 0; --i) {
      Rational acc(u(i, n + col));
      for (int j = i + 1; j < n; ++j) {
        if (u(i, j) != 0) acc -= Rational(u(i, j)) * inverse(j, col);
      }
      inverse(i, col) = acc / Rational(u(i, i));
    }
  }
  return inverse;
}

std::int64_t determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (a.rows() == 0) return 1;
  Elimination elim = bareiss(a);
  if (elim.singular) return 0;
  const std::int64_t last = elim.work(a.rows() - 1, a.rows() - 1);
  return elim.swaps % 2 == 0 ? last : -last;
}

}  // namespace mtsp
