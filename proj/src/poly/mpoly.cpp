#include "k3/poly/mpoly.hpp"

namespace k3 {

std::string monomial_to_string(const Monomial& m, const PolyRing& ring) {
  std::string s;
  for (int i = 0; i < ring.nvars(); ++i) {
    if (!m[i]) continue;
    if (!s.empty()) s += "*";
    s += ring.name(i);
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

namespace {

void enumerate(const PolyRing& ring, int var, int remaining, Monomial& cur, std::vector<Monomial>& out) {
  if (var == ring.nvars()) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  int w = ring.weight(var);
  for (int e = remaining / w; e >= 0; --e) {
    cur[var] = static_cast<std::uint16_t>(e);
    enumerate(ring, var + 1, remaining - e * w, cur, out);
  }
  cur[var] = 0;
}

}  // namespace

std::vector<Monomial> monomials_of_weighted_degree(const PolyRing& ring, int d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  Monomial cur;
  enumerate(ring, 0, d, cur, out);
  std::sort(out.begin(), out.end(),
            [&](const Monomial& a, const Monomial& b) { return canonical_cmp(ring, a, b) > 0; });
  return out;
}

}  // namespace k3
