#include "k3/poly/order.hpp"

#include <stdexcept>

namespace k3 {

MonomialOrder::MonomialOrder(int nvars, std::vector<std::vector<int>> rows, Tie tie, std::string label)
    : n_(nvars), rows_(std::move(rows)), tie_(tie), label_(std::move(label)) {
  for (const auto& r : rows_)
    if (static_cast<int>(r.size()) != n_) throw std::invalid_argument("order row length mismatch");
}

MonomialOrder MonomialOrder::grevlex(const PolyRing& ring) {
  return MonomialOrder(ring.nvars(), {ring.weights()}, Tie::RevLex, "grevlex");
}

MonomialOrder MonomialOrder::lex(int nvars) { return MonomialOrder(nvars, {}, Tie::Lex, "lex"); }

MonomialOrder MonomialOrder::elimination(const PolyRing& ring, const std::vector<bool>& drop) {
  if (static_cast<int>(drop.size()) != ring.nvars()) throw std::invalid_argument("elimination mask length");
  std::vector<int> block(drop.size(), 0);
  for (std::size_t i = 0; i < drop.size(); ++i)
    if (drop[i]) block[i] = ring.weight(static_cast<int>(i));
  return MonomialOrder(ring.nvars(), {block, ring.weights()}, Tie::RevLex, "elimination");
}

}  // namespace k3
