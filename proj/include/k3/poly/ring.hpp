#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "k3/exact/number_field.hpp"

namespace k3 {

enum class FieldKind { Rational, NumberField, FunctionField };

/// Coefficient field of a polynomial ring. `param` names the field generator (the number field
/// generator, or the parameter t of ℚ(t)); it may appear in polynomial text.
struct FieldDesc {
  FieldKind kind = FieldKind::Rational;
  NumberFieldPtr number_field;
  std::string param;

  static FieldDesc rationals() { return {}; }
  static FieldDesc function_field(std::string t = "t") {
    return {FieldKind::FunctionField, nullptr, std::move(t)};
  }
  static FieldDesc number(NumberFieldPtr nf) {
    std::string g = nf->generator();
    return {FieldKind::NumberField, std::move(nf), std::move(g)};
  }
  std::string describe() const;
  bool operator==(const FieldDesc& o) const;
};

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

/// Variable names, positive weights and the coefficient field.
class PolyRing {
public:
  /// Throws std::invalid_argument on duplicate names, bad weights or too many variables.
  PolyRing(std::vector<std::string> names, std::vector<int> weights = {}, FieldDesc field = {});

  static RingPtr make(std::vector<std::string> names, std::vector<int> weights = {},
                      FieldDesc field = {}) {
    return std::make_shared<const PolyRing>(std::move(names), std::move(weights), std::move(field));
  }
  /// Ring in x0..x{n-1} with unit weights.
  static RingPtr projective(int n, const std::string& prefix = "x", FieldDesc field = {});

  int nvars() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int i) const { return names_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& weights() const { return weights_; }
  int weight(int i) const { return weights_[static_cast<std::size_t>(i)]; }
  bool standard_grading() const;
  const FieldDesc& field() const { return field_; }
  /// Index of a variable name, or nullopt.
  std::optional<int> index_of(const std::string& name) const;

  /// Same variables and weights over another field.
  RingPtr with_field(FieldDesc field) const { return make(names_, weights_, std::move(field)); }
  /// This ring with extra variables appended.
  RingPtr extended(const std::vector<std::string>& extra, const std::vector<int>& extra_weights = {}) const;

  bool operator==(const PolyRing& o) const {
    return names_ == o.names_ && weights_ == o.weights_ && field_ == o.field_;
  }

private:
  std::vector<std::string> names_;
  std::vector<int> weights_;
  FieldDesc field_;
};

}  // namespace k3
