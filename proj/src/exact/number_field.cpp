#include "k3/exact/number_field.hpp"

#include <stdexcept>

namespace k3 {

NumberField::NumberField(const QPoly& minpoly, std::string generator)
    : m_(minpoly.monic()), gen_(std::move(generator)) {
  if (m_.degree() < 1 || m_.degree() > 6)
    throw std::invalid_argument("number field degree must be between 1 and 6");
  auto f = factor(m_);
  if (f.size() != 1 || f[0].second != 1)
    throw std::invalid_argument("number field polynomial is reducible: " + m_.to_string());
}

Integer NumberField::disc_class() const { return squarefree_class(discriminant(m_)); }

NFElem::NFElem(NumberFieldPtr field, const QPoly& residue) : field_(std::move(field)) {
  r_ = field_ ? residue % field_->minpoly() : residue;
  if (!field_ && r_.degree() > 0) throw std::invalid_argument("non-constant element without field");
}

Rational NFElem::to_rational() const {
  if (!is_rational()) throw std::domain_error("number field element is not rational");
  return r_.coeff(0);
}

const NumberFieldPtr& NFElem::join(const NFElem& o) {
  if (!field_) {
    field_ = o.field_;
  } else if (o.field_ && o.field_ != field_ && !field_->same_as(*o.field_)) {
    throw std::invalid_argument("arithmetic across different number fields");
  }
  return field_;
}

NFElem& NFElem::operator+=(const NFElem& o) {
  join(o);
  r_ += o.r_;
  return *this;
}

NFElem& NFElem::operator-=(const NFElem& o) {
  join(o);
  r_ -= o.r_;
  return *this;
}

NFElem& NFElem::operator*=(const NFElem& o) {
  join(o);
  r_ = r_ * o.r_;
  if (field_ && r_.degree() >= field_->degree()) r_ = r_ % field_->minpoly();
  return *this;
}

NFElem NFElem::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in number field");
  if (is_rational()) {
    NFElem r(r_.coeff(0).inverse());
    r.field_ = field_;
    return r;
  }
  auto [g, s, t] = xgcd(r_, field_->minpoly());
  (void)t;
  return NFElem(field_, s);
}

NFElem& NFElem::operator/=(const NFElem& o) {
  join(o);
  return *this *= o.inverse();
}

NFElem NFElem::operator-() const {
  NFElem r = *this;
  r.r_ = -r.r_;
  return r;
}

std::string NFElem::to_string() const {
  if (is_rational()) return r_.coeff(0).to_string();
  return r_.to_string(field_->generator());
}

}  // namespace k3
