#pragma once

#include "schubert_kit/bigint.hpp"
#include "schubert_kit/errors.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

namespace schubert_kit {

/// Dense row-major matrix over an exact ring (int64_t or BigInt).
template <class T> class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto &row : init) {
      if (row.size() != cols_)
        throw InvalidInput("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      out[i] = (*this)(i, j);
    return out;
  }
  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix &a, const Matrix &b) {
    if (a.cols_ != b.rows_)
      throw InvalidInput("matrix shape mismatch in product");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T &aik = a(i, k);
        if (aik == T(0))
          continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend std::vector<T> operator*(const Matrix &a, const std::vector<T> &x) {
    if (a.cols_ != x.size())
      throw InvalidInput("matrix/vector shape mismatch");
    std::vector<T> y(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j)
        y[i] += a(i, j) * x[j];
    return y;
  }

  friend bool operator==(const Matrix &, const Matrix &) = default;
  friend auto operator<=>(const Matrix &a, const Matrix &b) {
    if (auto c = a.rows_ <=> b.rows_; c != 0)
      return c;
    if (auto c = a.cols_ <=> b.cols_; c != 0)
      return c;
    return a.data_ <=> b.data_;
  }

  const std::vector<T> &data() const { return data_; }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<std::int64_t>;
using BigMatrix = Matrix<BigInt>;

template <class To, class From> Matrix<To> matrix_cast(const Matrix<From> &m) {
  Matrix<To> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<To, std::int64_t> && std::is_same_v<From, BigInt>)
        out(i, j) = m(i, j).template convert_to<std::int64_t>();
      else
        out(i, j) = To(m(i, j));
    }
  return out;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline BigInt determinant(BigMatrix a) {
  const std::size_t n = a.rows();
  if (n != a.cols())
    throw InvalidInput("determinant of a non-square matrix");
  if (n == 0)
    return 1;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a(swap_row, k) == 0)
        ++swap_row;
      if (swap_row == n)
        return 0;
      for (std::size_t j = 0; j < n; ++j)
        std::swap(a(k, j), a(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// U * input * V == diagonal, with U, V unimodular; u_inverse * U == 1.
struct SmithForm {
  BigMatrix u;
  BigMatrix u_inverse;
  BigMatrix diagonal;
  BigMatrix v;

  /// Nonzero diagonal entries d_1 | d_2 | ... (all positive).
  std::vector<BigInt> nonzero_diagonal() const {
    std::vector<BigInt> out;
    for (std::size_t i = 0; i < std::min(diagonal.rows(), diagonal.cols()); ++i)
      if (diagonal(i, i) != 0)
        out.push_back(diagonal(i, i));
    return out;
  }
};

namespace detail {

inline void swap_rows(BigMatrix &m, std::size_t a, std::size_t b) {
  if (a == b)
    return;
  for (std::size_t j = 0; j < m.cols(); ++j)
    std::swap(m(a, j), m(b, j));
}
inline void swap_cols(BigMatrix &m, std::size_t a, std::size_t b) {
  if (a == b)
    return;
  for (std::size_t i = 0; i < m.rows(); ++i)
    std::swap(m(i, a), m(i, b));
}
// row[dst] += factor * row[src]
inline void add_row(BigMatrix &m, std::size_t dst, std::size_t src, const BigInt &factor) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    m(dst, j) += factor * m(src, j);
}
inline void add_col(BigMatrix &m, std::size_t dst, std::size_t src, const BigInt &factor) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    m(i, dst) += factor * m(i, src);
}

} // namespace detail

/// Smith normal form over Z, pivoting on the entry of least absolute value.
inline SmithForm smith_normal_form(const BigMatrix &input) {
  using detail::add_col;
  using detail::add_row;
  const std::size_t m = input.rows();
  const std::size_t n = input.cols();
  SmithForm s{BigMatrix::identity(m), BigMatrix::identity(m), input, BigMatrix::identity(n)};
  BigMatrix &d = s.diagonal;

  // Row operations on d are mirrored on u (left factor) and, inverted, as
  // column operations on u_inverse.
  auto row_swap = [&](std::size_t a, std::size_t b) {
    detail::swap_rows(d, a, b);
    detail::swap_rows(s.u, a, b);
    detail::swap_cols(s.u_inverse, a, b);
  };
  auto row_add = [&](std::size_t dst, std::size_t src, const BigInt &f) {
    add_row(d, dst, src, f);
    add_row(s.u, dst, src, f);
    add_col(s.u_inverse, src, dst, -f);
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    detail::swap_cols(d, a, b);
    detail::swap_cols(s.v, a, b);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const BigInt &f) {
    add_col(d, dst, src, f);
    add_col(s.v, dst, src, f);
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (d(i, j) != 0 && (!best || abs(d(i, j)) < abs(d(best->first, best->second))))
            best = {i, j};
      if (!best)
        return s;
      row_swap(t, best->first);
      col_swap(t, best->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0)
          continue;
        BigInt q = d(i, t) / d(t, t);
        row_add(i, t, -q);
        if (d(i, t) != 0)
          clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0)
          continue;
        BigInt q = d(t, j) / d(t, t);
        col_add(j, t, -q);
        if (d(t, j) != 0)
          clean = false;
      }
      if (!clean)
        continue;

      // divisibility of the remaining block by the pivot
      std::optional<std::size_t> offending_row;
      for (std::size_t i = t + 1; i < m && !offending_row; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            offending_row = i;
            break;
          }
      if (offending_row) {
        row_add(t, *offending_row, 1);
        continue;
      }
      break;
    }
    if (d(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j)
        d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < m; ++j)
        s.u(t, j) = -s.u(t, j);
      for (std::size_t i = 0; i < m; ++i)
        s.u_inverse(i, t) = -s.u_inverse(i, t);
    }
  }
  return s;
}

/// Integer solution x of a*x == b, if one exists (free coordinates set to 0).
inline std::optional<std::vector<BigInt>> solve_integer(const BigMatrix &a, const std::vector<BigInt> &b) {
  if (b.size() != a.rows())
    throw InvalidInput("right-hand side has the wrong length");
  const SmithForm s = smith_normal_form(a);
  const std::vector<BigInt> ub = s.u * b;
  std::vector<BigInt> y(a.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const BigInt di = (i < a.cols()) ? s.diagonal(i, i) : BigInt(0);
    if (di == 0) {
      if (ub[i] != 0)
        return std::nullopt;
      continue;
    }
    if (ub[i] % di != 0)
      return std::nullopt;
    y[i] = ub[i] / di;
  }
  return s.v * y;
}

/// A basis (as columns) of the Z-span of the columns of a.
inline BigMatrix column_span_basis(const BigMatrix &a) {
  const SmithForm s = smith_normal_form(a);
  const std::vector<BigInt> ds = s.nonzero_diagonal();
  BigMatrix basis(a.rows(), ds.size());
  for (std::size_t j = 0; j < ds.size(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i)
      basis(i, j) = s.u_inverse(i, j) * ds[j];
  return basis;
}

inline std::size_t rank(const BigMatrix &a) { return smith_normal_form(a).nonzero_diagonal().size(); }

} // namespace schubert_kit
