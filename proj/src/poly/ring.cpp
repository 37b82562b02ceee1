#include "k3/poly/ring.hpp"

#include <set>
#include <stdexcept>

#include "k3/poly/monomial.hpp"

namespace k3 {

std::string FieldDesc::describe() const {
  switch (kind) {
    case FieldKind::Rational:
      return "QQ";
    case FieldKind::FunctionField:
      return "QQ(" + param + ")";
    case FieldKind::NumberField:
      return "QQ[" + param + "]/(" + number_field->minpoly().to_string(param) + ")";
  }
  return "?";
}

bool FieldDesc::operator==(const FieldDesc& o) const {
  if (kind != o.kind || param != o.param) return false;
  if (kind != FieldKind::NumberField) return true;
  return number_field == o.number_field || number_field->same_as(*o.number_field);
}

PolyRing::PolyRing(std::vector<std::string> names, std::vector<int> weights, FieldDesc field)
    : names_(std::move(names)), weights_(std::move(weights)), field_(std::move(field)) {
  if (names_.size() > static_cast<std::size_t>(kMaxVars))
    throw std::invalid_argument("too many variables (max " + std::to_string(kMaxVars) + ")");
  if (weights_.empty()) weights_.assign(names_.size(), 1);
  if (weights_.size() != names_.size()) throw std::invalid_argument("weights/variables length mismatch");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw std::invalid_argument("empty variable name");
    if (!seen.insert(n).second) throw std::invalid_argument("duplicate variable name: " + n);
    if (n == field_.param) throw std::invalid_argument("variable name clashes with field parameter: " + n);
  }
  for (int w : weights_)
    if (w < 1) throw std::invalid_argument("variable weights must be positive");
}

RingPtr PolyRing::projective(int n, const std::string& prefix, FieldDesc field) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
  return make(std::move(names), {}, std::move(field));
}

bool PolyRing::standard_grading() const {
  for (int w : weights_)
    if (w != 1) return false;
  return true;
}

std::optional<int> PolyRing::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

RingPtr PolyRing::extended(const std::vector<std::string>& extra, const std::vector<int>& extra_weights) const {
  auto names = names_;
  auto weights = weights_;
  names.insert(names.end(), extra.begin(), extra.end());
  if (extra_weights.empty()) weights.insert(weights.end(), extra.size(), 1);
  else weights.insert(weights.end(), extra_weights.begin(), extra_weights.end());
  return make(std::move(names), std::move(weights), field_);
}

}  // namespace k3
