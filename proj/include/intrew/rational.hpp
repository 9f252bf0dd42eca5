#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "intrew/errors.hpp"

namespace intrew {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;
using Vector = std::vector<Rational>;

/// Parses "p", "-p", "+p" or "p/q". Decimal and exponent notation are rejected.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] {
    return Error(Errc::ParseError, "malformed rational literal '" + std::string(text) + "'");
  };
  std::size_t pos = 0;
  while (pos < text.size() && text[pos] == ' ') ++pos;
  std::size_t end = text.size();
  while (end > pos && text[end - 1] == ' ') --end;
  std::string_view body = text.substr(pos, end - pos);
  if (body.empty()) throw fail();
  bool negative = false;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string_view num = body;
  std::string_view den = "1";
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    num = body.substr(0, slash);
    den = body.substr(slash + 1);
  }
  if (!digits(num) || !digits(den)) throw fail();
  Integer n{std::string(num)};
  Integer d{std::string(den)};
  if (d == 0) throw Error(Errc::ParseError, "zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  return negative ? Rational(-r) : r;
}

inline std::string to_string(const Rational& r) { return r.str(); }

inline Vector zero_vector(std::size_t n) { return Vector(n, Rational(0)); }

inline Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n, Rational(0));
  v[i] = 1;
  return v;
}

inline bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

inline Vector operator+(const Vector& a, const Vector& b) {
  Vector out(a);
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

inline Vector operator-(const Vector& a, const Vector& b) {
  Vector out(a);
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

inline Vector operator*(const Rational& s, const Vector& v) {
  Vector out(v);
  for (auto& x : out) x *= s;
  return out;
}

/// Indices of the non-zero coordinates.
inline std::vector<std::size_t> support(const Vector& v) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) out.push_back(i);
  return out;
}

/// Dense exact matrix. Desk-scale dimensions only.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_columns(std::size_t rows, const std::vector<Vector>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    return m;
  }

  static Matrix from_rows(std::size_t cols, const std::vector<Vector>& rows) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  Vector row(std::size_t r) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }

  Vector apply(const Vector& v) const {
    Vector out(rows_, Rational(0));
    for (std::size_t c = 0; c < cols_; ++c) {
      if (v[c] == 0) continue;
      for (std::size_t r = 0; r < rows_; ++r)
        if ((*this)(r, c) != 0) out[r] += (*this)(r, c) * v[c];
    }
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  /// [A | B]
  static Matrix hstack(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows_, a.cols_ + b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
      for (std::size_t c = 0; c < a.cols_; ++c) m(r, c) = a(r, c);
      for (std::size_t c = 0; c < b.cols_; ++c) m(r, a.cols_ + c) = b(r, c);
    }
    return m;
  }

  /// [A ; B]
  static Matrix vstack(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows_ + b.rows_, a.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t c = 0; c < a.cols_; ++c) m(r, c) = a(r, c);
    for (std::size_t r = 0; r < b.rows_; ++r)
      for (std::size_t c = 0; c < b.cols_; ++c) m(a.rows_ + r, c) = b(r, c);
    return m;
  }

  /// Rows [begin, end).
  Matrix row_block(std::size_t begin, std::size_t end) const {
    Matrix m(end - begin, cols_);
    for (std::size_t r = begin; r < end; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(r - begin, c) = (*this)(r, c);
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (b(k, j) != 0) m(i, j) += x * b(k, j);
      }
    return m;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix m(a);
    for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += b.data_[i];
    return m;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix m(a);
    for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] -= b.data_[i];
    return m;
  }

  friend Matrix operator*(const Rational& s, const Matrix& a) {
    Matrix m(a);
    for (auto& x : m.data_) x *= s;
    return m;
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct RowEchelon {
  Matrix reduced;                   // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;  // pivot column of each remaining row
};

/// Gauss-Jordan elimination with leftmost pivots.
inline RowEchelon row_reduce(Matrix m) {
  std::vector<std::size_t> pivots;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
    std::size_t p = lead_row;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != lead_row)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(lead_row, k));
    Rational inv = 1 / m(lead_row, c);
    for (std::size_t k = c; k < m.cols(); ++k) m(lead_row, k) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row || m(r, c) == 0) continue;
      Rational f = m(r, c);
      for (std::size_t k = c; k < m.cols(); ++k) m(r, k) -= f * m(lead_row, k);
    }
    pivots.push_back(c);
    ++lead_row;
  }
  return {m.row_block(0, lead_row), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return row_reduce(m).pivots.size(); }

/// Basis of {v | m v = 0}, one vector per free column, in column order.
inline std::vector<Vector> kernel_basis(const Matrix& m) {
  RowEchelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v = zero_vector(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some solution of m x = b, or nullopt when b is outside the column space.
inline std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  RowEchelon e = row_reduce(aug);
  Vector x = zero_vector(m.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == m.cols()) return std::nullopt;
    x[e.pivots[r]] = e.reduced(r, m.cols());
  }
  return x;
}

}  // namespace intrew
