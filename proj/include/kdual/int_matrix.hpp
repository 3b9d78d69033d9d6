#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace kdual {

using Int = mpz_class;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Int& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const Int> entries() const noexcept { return entries_; }
  std::span<const Int> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }

  /// Appends a row; `values.size()` must equal `cols()` (or set it when the matrix has no rows yet).
  void append_row(std::span<const Int> values);

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Int& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Int& factor);
  void negate_row(std::size_t r);

  bool is_diagonal() const;

  /// Bareiss fraction-free elimination; requires a square matrix.
  Int determinant() const;

  IntMatrix operator*(const IntMatrix& rhs) const;
  bool operator==(const IntMatrix& rhs) const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> entries_;
};

struct SmithForm {
  IntMatrix s;
  IntMatrix u;
  IntMatrix v;

  /// Leading diagonal of `s` (length min(rows, cols)).
  std::vector<Int> diagonal() const;
};

/// Smith normal form with transforms: s = u * m * v, u and v unimodular,
/// s diagonal with d_1 | d_2 | ... | d_r >= 0 followed by zeros.
SmithForm snf(const IntMatrix& m);

/// Diagonal of the Smith normal form only; skips transform bookkeeping.
std::vector<Int> smith_diagonal(const IntMatrix& m);

}  // namespace kdual
