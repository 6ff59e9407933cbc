#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mtsp/rational.hpp"

namespace mtsp {

/// Dense row-major matrix, 0-based indices.
template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols, T fill = T{})
      : rows_(rows), cols_(cols), cells_(static_cast<std::size_t>(rows) * cols, fill) {}

  static DenseMatrix identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  T& operator()(int r, int c) { return cells_[static_cast<std::size_t>(r * cols_ + c)]; }
  const T& operator()(int r, int c) const { return cells_[static_cast<std::size_t>(r * cols_ + c)]; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> cells_;
};

using IntMatrix = DenseMatrix<std::int64_t>;
using RationalMatrix = DenseMatrix<Rational>;

RationalMatrix to_rational(const IntMatrix& m);
RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);

/// Exact inverse of a square integer matrix, or nullopt if singular.
///
/// Fraction-free (Bareiss) forward elimination on [A | I] keeps every
/// intermediate an integer minor; pivots are chosen by largest magnitude in
/// the column, ties to the lowest row index. The triangular system is then
/// back-substituted in exact rationals.
std::optional<RationalMatrix> invert_exact(const IntMatrix& a);

/// Determinant by the same elimination.
std::int64_t determinant(const IntMatrix& a);

}  // namespace mtsp
