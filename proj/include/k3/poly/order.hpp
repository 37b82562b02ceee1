#pragma once

#include <string>
#include <vector>

#include "k3/poly/monomial.hpp"
#include "k3/poly/ring.hpp"

namespace k3 {

/// Monomial order given by integer weight rows, broken by reverse-lex or lex.
/// Reverse-lex tie-breaking is only a well-order when some row is positive on every variable.
class MonomialOrder {
public:
  enum class Tie { RevLex, Lex };

  MonomialOrder() = default;
  MonomialOrder(int nvars, std::vector<std::vector<int>> rows, Tie tie, std::string label);

  /// Weighted graded reverse lexicographic order using the ring weights.
  static MonomialOrder grevlex(const PolyRing& ring);
  static MonomialOrder lex(int nvars);
  /// Block order: the flagged variables are eliminated (degree in them compared first).
  static MonomialOrder elimination(const PolyRing& ring, const std::vector<bool>& drop);

  /// Negative, zero or positive as a < b, a == b, a > b.
  int cmp(const Monomial& a, const Monomial& b) const {
    for (const auto& row : rows_) {
      long d = 0;
      for (int i = 0; i < n_; ++i) d += static_cast<long>(row[static_cast<std::size_t>(i)]) * (a[i] - b[i]);
      if (d) return d > 0 ? 1 : -1;
    }
    if (tie_ == Tie::RevLex) {
      for (int i = n_ - 1; i >= 0; --i)
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    } else {
      for (int i = 0; i < n_; ++i)
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
    }
    return 0;
  }
  bool greater(const Monomial& a, const Monomial& b) const { return cmp(a, b) > 0; }

  int nvars() const { return n_; }
  const std::vector<std::vector<int>>& rows() const { return rows_; }
  Tie tie() const { return tie_; }
  const std::string& label() const { return label_; }
  bool operator==(const MonomialOrder& o) const {
    return n_ == o.n_ && rows_ == o.rows_ && tie_ == o.tie_;
  }

private:
  int n_ = 0;
  std::vector<std::vector<int>> rows_;
  Tie tie_ = Tie::RevLex;
  std::string label_;
};

}  // namespace k3
