#pragma once

// Exact linear algebra over Q: fraction-free row reduction, kernels,
// incrementally maintained subspaces and a sparse rank accumulator.

#include "nsrep/exactnum.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace nsrep::linalg {

using Vec = std::vector<Rational>;

class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec row(std::size_t r) const {
    return Vec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
               data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }
  void append_row(const Vec& v) {
    if (rows_ == 0 && cols_ == 0) cols_ = v.size();
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
  }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

inline bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

struct Rref {
  Matrix reduced;                 // nonzero rows only, pivots equal to 1
  std::vector<std::size_t> pivots; // pivot column of each row
};

/// Reduced row echelon form. Elimination runs on integer rows (each row
/// scaled to a primitive integer vector) so no fractions appear until the
/// final pivot normalisation.
inline Rref rref(const Matrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<std::vector<mpz_class>> a(R, std::vector<mpz_class>(C));
  for (std::size_t i = 0; i < R; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < C; ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).denominator().get_mpz_t());
    for (std::size_t j = 0; j < C; ++j) a[i][j] = m(i, j).numerator() * (l / m(i, j).denominator());
  }
  auto make_primitive = [](std::vector<mpz_class>& row) {
    mpz_class g = 0;
    for (const auto& x : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
      for (auto& x : row) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  };

  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t p = r;
    while (p < R && a[p][c] == 0) ++p;
    if (p == R) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r || a[i][c] == 0) continue;
      mpz_class f = a[i][c], piv = a[r][c];
      for (std::size_t j = 0; j < C; ++j) a[i][j] = a[i][j] * piv - a[r][j] * f;
      make_primitive(a[i]);
    }
    pivots.push_back(c);
    ++r;
  }

  Rref out;
  out.pivots = pivots;
  out.reduced = Matrix(r, C);
  for (std::size_t i = 0; i < r; ++i) {
    const mpz_class& piv = a[i][pivots[i]];
    for (std::size_t j = 0; j < C; ++j) out.reduced(i, j) = Rational(a[i][j], piv);
  }
  return out;
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

/// Kernel basis {v : m v = 0}, one vector per free column in ascending
/// order, each with a 1 at its free column.
inline std::vector<Vec> kernel(const Matrix& m) {
  const std::size_t C = m.cols();
  Rref r = rref(m);
  std::vector<bool> is_pivot(C, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < C; ++f) {
    if (is_pivot[f]) continue;
    Vec v(C);
    v[f] = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// A subspace of Q^n kept in reduced row echelon form.
class Subspace {
public:
  explicit Subspace(std::size_t ambient = 0) : n_(ambient) {}

  std::size_t ambient_dimension() const { return n_; }
  std::size_t dimension() const { return rows_.size(); }
  const std::map<std::size_t, Vec>& rows() const { return rows_; }

  // Canonical representative of v modulo the subspace (zero on every pivot).
  Vec reduce(Vec v) const {
    for (const auto& [p, row] : rows_) {
      if (v[p].is_zero()) continue;
      Rational f = v[p];
      for (std::size_t j = 0; j < n_; ++j)
        if (!row[j].is_zero()) v[j] -= f * row[j];
    }
    return v;
  }

  bool contains(const Vec& v) const { return is_zero(reduce(v)); }

  // Returns true if the dimension grew.
  bool insert(const Vec& v) {
    Vec r = reduce(v);
    std::size_t p = 0;
    while (p < n_ && r[p].is_zero()) ++p;
    if (p == n_) return false;
    Rational inv = r[p].inverse();
    for (auto& x : r) x *= inv;
    for (auto& [q, row] : rows_) {
      if (row[p].is_zero()) continue;
      Rational f = row[p];
      for (std::size_t j = 0; j < n_; ++j)
        if (!r[j].is_zero()) row[j] -= f * r[j];
    }
    rows_.emplace(p, std::move(r));
    return true;
  }

  std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> out;
    for (const auto& kv : rows_) out.push_back(kv.first);
    return out;
  }

private:
  std::size_t n_;
  std::map<std::size_t, Vec> rows_;
};

/// Incremental rank of a sparse system; rows are kept in echelon form
/// keyed by their leading column.
class SparseRank {
public:
  using Row = std::map<std::size_t, Rational>;

  explicit SparseRank(std::size_t unknowns) : n_(unknowns) {}

  std::size_t unknowns() const { return n_; }
  std::size_t rank() const { return pivots_.size(); }
  std::size_t nullity() const { return n_ - pivots_.size(); }

  bool add(Row row) {
    for (auto it = row.begin(); it != row.end();) {
      if (it->second.is_zero()) it = row.erase(it);
      else ++it;
    }
    while (!row.empty()) {
      auto lead = row.begin();
      auto piv = pivots_.find(lead->first);
      if (piv == pivots_.end()) {
        Rational inv = lead->second.inverse();
        for (auto& kv : row) kv.second *= inv;
        pivots_.emplace(lead->first, std::move(row));
        return true;
      }
      Rational f = lead->second;
      for (const auto& [col, val] : piv->second) {
        auto [it, fresh] = row.try_emplace(col);
        it->second -= f * val;
        if (it->second.is_zero()) row.erase(it);
      }
    }
    return false;
  }

private:
  std::size_t n_;
  std::map<std::size_t, Row> pivots_;
};

} // namespace nsrep::linalg
