#include "kdual/int_matrix.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace kdual {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
    for (long x : r) entries_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

void IntMatrix::append_row(std::span<const Int> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) throw std::invalid_argument("IntMatrix::append_row: width mismatch");
  entries_.insert(entries_.end(), values.begin(), values.end());
  ++rows_;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Int& factor) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += factor * (*this)(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Int& factor) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += factor * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (r != c && (*this)(r, c) != 0) return false;
  return true;
}

Int IntMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant: matrix is not square");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix a = *this;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap_with = k + 1;
      while (swap_with < n && a(swap_with, k) == 0) ++swap_with;
      if (swap_with == n) return 0;
      a.swap_rows(k, swap_with);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("IntMatrix product: shape mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& x = (*this)(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += x * rhs(k, j);
    }
  return out;
}

bool IntMatrix::operator==(const IntMatrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && entries_ == rhs.entries_;
}

std::string IntMatrix::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) out << ',';
    out << '[';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) out << ',';
      out << (*this)(r, c);
    }
    out << ']';
  }
  out << ']';
  return out.str();
}

std::vector<Int> SmithForm::diagonal() const {
  std::vector<Int> d;
  const std::size_t n = std::min(s.rows(), s.cols());
  d.reserve(n);
  for (std::size_t i = 0; i < n; ++i) d.push_back(s(i, i));
  return d;
}

namespace {

// Thrown by the machine-word kernel; the caller retries with GMP integers.
struct WordOverflow {};

struct WordOps {
  using T = std::int64_t;
  static bool is_zero(T x) { return x == 0; }
  static bool negative(T x) { return x < 0; }
  static T neg(T x) {
    if (x == std::numeric_limits<T>::min()) throw WordOverflow{};
    return -x;
  }
  static T abs(T x) { return x < 0 ? neg(x) : x; }
  static bool abs_less(T a, T b) { return abs(a) < abs(b); }
  static T quot(T a, T b) { return a / b; }
  static bool divides(T d, T x) { return x % d == 0; }
  // a - q * b
  static T submul(T a, T q, T b) {
    T prod;
    T out;
    if (__builtin_mul_overflow(q, b, &prod) || __builtin_sub_overflow(a, prod, &out)) throw WordOverflow{};
    return out;
  }
  static T add(T a, T b) {
    T out;
    if (__builtin_add_overflow(a, b, &out)) throw WordOverflow{};
    return out;
  }
};

struct BigOps {
  using T = Int;
  static bool is_zero(const T& x) { return sgn(x) == 0; }
  static bool negative(const T& x) { return sgn(x) < 0; }
  static T neg(const T& x) { return -x; }
  static bool abs_less(const T& a, const T& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0; }
  static T quot(const T& a, const T& b) {
    T q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
  }
  static bool divides(const T& d, const T& x) { return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0; }
  static T submul(const T& a, const T& q, const T& b) { return a - q * b; }
  static T add(const T& a, const T& b) { return a + b; }
};

template <class Ops>
struct Dense {
  using T = typename Ops::T;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> a;

  Dense(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  T& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }

  void swap_rows(std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t c = 0; c < cols; ++c) std::swap(at(x, c), at(y, c));
  }
  void swap_cols(std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t r = 0; r < rows; ++r) std::swap(at(r, x), at(r, y));
  }
  // row[dst] -= q * row[src]
  void sub_row(std::size_t dst, std::size_t src, const T& q) {
    for (std::size_t c = 0; c < cols; ++c) at(dst, c) = Ops::submul(at(dst, c), q, at(src, c));
  }
  void sub_col(std::size_t dst, std::size_t src, const T& q) {
    for (std::size_t r = 0; r < rows; ++r) at(r, dst) = Ops::submul(at(r, dst), q, at(r, src));
  }
  void add_row(std::size_t dst, std::size_t src) {
    for (std::size_t c = 0; c < cols; ++c) at(dst, c) = Ops::add(at(dst, c), at(src, c));
  }
  void negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols; ++c) at(r, c) = Ops::neg(at(r, c));
  }
};

template <class Ops>
void smith_in_place(Dense<Ops>& m, Dense<Ops>* u, Dense<Ops>* v) {
  using T = typename Ops::T;
  const std::size_t diag = std::min(m.rows, m.cols);
  for (std::size_t t = 0; t < diag; ++t) {
    for (;;) {
      // Pivot: smallest nonzero |entry| in the trailing block, first in row-major order.
      std::optional<std::pair<std::size_t, std::size_t>> pivot;
      for (std::size_t i = t; i < m.rows; ++i)
        for (std::size_t j = t; j < m.cols; ++j) {
          const T& x = m.at(i, j);
          if (Ops::is_zero(x)) continue;
          if (!pivot || Ops::abs_less(x, m.at(pivot->first, pivot->second))) pivot = {i, j};
        }
      if (!pivot) return;

      m.swap_rows(t, pivot->first);
      if (u) u->swap_rows(t, pivot->first);
      m.swap_cols(t, pivot->second);
      if (v) v->swap_cols(t, pivot->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < m.rows; ++i) {
        if (Ops::is_zero(m.at(i, t))) continue;
        T q = Ops::quot(m.at(i, t), m.at(t, t));
        m.sub_row(i, t, q);
        if (u) u->sub_row(i, t, q);
        if (!Ops::is_zero(m.at(i, t))) clean = false;
      }
      for (std::size_t j = t + 1; j < m.cols; ++j) {
        if (Ops::is_zero(m.at(t, j))) continue;
        T q = Ops::quot(m.at(t, j), m.at(t, t));
        m.sub_col(j, t, q);
        if (v) v->sub_col(j, t, q);
        if (!Ops::is_zero(m.at(t, j))) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into the pivot row and reduce again.
      bool divisible = true;
      for (std::size_t i = t + 1; i < m.rows && divisible; ++i)
        for (std::size_t j = t + 1; j < m.cols; ++j)
          if (!Ops::divides(m.at(t, t), m.at(i, j))) {
            m.add_row(t, i);
            if (u) u->add_row(t, i);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (Ops::negative(m.at(t, t))) {
      m.negate_row(t);
      if (u) u->negate_row(t);
    }
  }
}

std::optional<Dense<WordOps>> to_words(const IntMatrix& m) {
  Dense<WordOps> out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Int& x = m(r, c);
      if (!x.fits_slong_p()) return std::nullopt;
      out.at(r, c) = x.get_si();
    }
  return out;
}

Dense<BigOps> to_big(const IntMatrix& m) {
  Dense<BigOps> out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.at(r, c) = m(r, c);
  return out;
}

template <class Ops>
IntMatrix to_matrix(Dense<Ops>& d) {
  IntMatrix out(d.rows, d.cols);
  for (std::size_t r = 0; r < d.rows; ++r)
    for (std::size_t c = 0; c < d.cols; ++c) {
      if constexpr (std::is_same_v<Ops, WordOps>)
        out(r, c) = static_cast<long>(d.at(r, c));
      else
        out(r, c) = d.at(r, c);
    }
  return out;
}

template <class Ops>
Dense<Ops> dense_identity(std::size_t n) {
  Dense<Ops> id(n, n);
  for (std::size_t i = 0; i < n; ++i) id.at(i, i) = 1;
  return id;
}

template <class Ops>
SmithForm run_snf(Dense<Ops> m) {
  auto u = dense_identity<Ops>(m.rows);
  auto v = dense_identity<Ops>(m.cols);
  smith_in_place<Ops>(m, &u, &v);
  return SmithForm{to_matrix(m), to_matrix(u), to_matrix(v)};
}

template <class Ops>
std::vector<Int> run_diagonal(Dense<Ops> m) {
  smith_in_place<Ops>(m, nullptr, nullptr);
  std::vector<Int> d;
  const std::size_t n = std::min(m.rows, m.cols);
  d.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if constexpr (std::is_same_v<Ops, WordOps>)
      d.emplace_back(static_cast<long>(m.at(i, i)));
    else
      d.push_back(m.at(i, i));
  }
  return d;
}

}  // namespace

SmithForm snf(const IntMatrix& m) {
  if (auto words = to_words(m)) {
    try {
      return run_snf<WordOps>(std::move(*words));
    } catch (const WordOverflow&) {
    }
  }
  return run_snf<BigOps>(to_big(m));
}

std::vector<Int> smith_diagonal(const IntMatrix& m) {
  if (auto words = to_words(m)) {
    try {
      return run_diagonal<WordOps>(std::move(*words));
    } catch (const WordOverflow&) {
    }
  }
  return run_diagonal<BigOps>(to_big(m));
}

}  // namespace kdual
