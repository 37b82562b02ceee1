#pragma once

#include <map>
#include <optional>
#include <vector>

namespace k3 {

/// Dense row-major matrix over a field.
template <class K>
class Matrix {
public:
  Matrix() = default;
  Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows * cols)) {}

  int rows() const { return r_; }
  int cols() const { return c_; }
  K& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * c_ + j)]; }
  const K& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * c_ + j)]; }

  /// In-place reduced row echelon form; returns pivot columns.
  std::vector<int> rref() {
    std::vector<int> piv;
    int row = 0;
    for (int col = 0; col < c_ && row < r_; ++col) {
      int p = -1;
      for (int i = row; i < r_; ++i)
        if (!(*this)(i, col).is_zero()) {
          p = i;
          break;
        }
      if (p < 0) continue;
      if (p != row)
        for (int j = 0; j < c_; ++j) std::swap((*this)(p, j), (*this)(row, j));
      K inv = K(1) / (*this)(row, col);
      for (int j = col; j < c_; ++j) (*this)(row, j) *= inv;
      for (int i = 0; i < r_; ++i) {
        if (i == row || (*this)(i, col).is_zero()) continue;
        K f = (*this)(i, col);
        for (int j = col; j < c_; ++j)
          if (!(*this)(row, j).is_zero()) (*this)(i, j) -= f * (*this)(row, j);
      }
      piv.push_back(col);
      ++row;
    }
    return piv;
  }

  int rank() const {
    Matrix m = *this;
    return static_cast<int>(m.rref().size());
  }

  /// Basis of the right kernel {v : M v = 0}.
  std::vector<std::vector<K>> kernel() const {
    Matrix m = *this;
    auto piv = m.rref();
    std::vector<bool> is_piv(static_cast<std::size_t>(c_), false);
    for (int p : piv) is_piv[static_cast<std::size_t>(p)] = true;
    std::vector<std::vector<K>> out;
    for (int f = 0; f < c_; ++f) {
      if (is_piv[static_cast<std::size_t>(f)]) continue;
      std::vector<K> v(static_cast<std::size_t>(c_));
      v[static_cast<std::size_t>(f)] = K(1);
      for (std::size_t r = 0; r < piv.size(); ++r) v[static_cast<std::size_t>(piv[r])] = -m(static_cast<int>(r), f);
      out.push_back(std::move(v));
    }
    return out;
  }

private:
  int r_ = 0, c_ = 0;
  std::vector<K> a_;
};

/// Detects the first linear dependency in a growing sequence of sparse vectors.
template <class K, class Key>
class DependencyFinder {
public:
  using Vec = std::map<Key, K>;

  /// Adds v; if v depends on the vectors added so far, returns coefficients c with
  /// sum c_i v_i = 0 over all vectors including v (whose coefficient is 1).
  std::optional<std::vector<K>> add(Vec v) {
    std::size_t k = rows_.size() + dependents_;
    std::vector<K> combo(k + 1);
    combo[k] = K(1);
    for (const auto& row : rows_) {
      auto it = v.find(row.pivot);
      if (it == v.end()) continue;
      K f = it->second;  // row is normalized so row.vec[pivot] == 1
      for (const auto& [key, c] : row.vec) {
        K& slot = v[key];
        slot -= f * c;
        if (slot.is_zero()) v.erase(key);
      }
      for (std::size_t i = 0; i < row.combo.size(); ++i)
        if (!row.combo[i].is_zero()) combo[i] -= f * row.combo[i];
    }
    if (v.empty()) {
      ++dependents_;
      return combo;
    }
    Row r;
    r.pivot = v.begin()->first;
    K inv = K(1) / v.begin()->second;
    for (auto& [key, c] : v) c *= inv;
    for (auto& c : combo) c *= inv;
    r.vec = std::move(v);
    r.combo = std::move(combo);
    rows_.push_back(std::move(r));
    return std::nullopt;
  }

private:
  struct Row {
    Key pivot;
    Vec vec;
    std::vector<K> combo;
  };
  std::vector<Row> rows_;
  std::size_t dependents_ = 0;
};

}  // namespace k3
