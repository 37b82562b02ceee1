#include "k3/exact/ratfunc.hpp"

#include <stdexcept>

namespace k3 {

RatFunc::RatFunc(const QPoly& num, const QPoly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = QPoly(Rational(1));
    return;
  }
  if (den_.degree() > 0) {
    QPoly g = gcd_q(num_, den_);
    if (g.degree() > 0) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
  }
  if (!den_.lc().is_one()) {
    Rational l = den_.lc().inverse();
    num_ = num_.scaled(l);
    den_ = den_.scaled(l);
  }
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (is_polynomial() && o.is_polynomial()) {
    num_ = num_.scaled(den_.lc()) + o.num_.scaled(o.den_.lc());
    den_ = QPoly(Rational(1));
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero() || o.is_zero()) {
    *this = RatFunc();
    return *this;
  }
  if (is_polynomial() && o.is_polynomial()) {
    num_ = num_ * o.num_;
    return *this;
  }
  QPoly g1 = gcd_q(num_, o.den_), g2 = gcd_q(o.num_, den_);
  num_ = (num_ / g1) * (o.num_ / g2);
  den_ = (den_ / g2) * (o.den_ / g1);
  normalize();
  return *this;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in Q(t)");
  return RatFunc(den_, num_);
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inverse(); }

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational RatFunc::eval(const Rational& a) const {
  Rational d = den_(a);
  if (d.is_zero()) throw std::domain_error("evaluation at a pole");
  return num_(a) / d;
}

std::string RatFunc::to_string(const std::string& var) const {
  if (is_polynomial()) return num_.to_string(var);
  std::string n = num_.to_string(var), d = den_.to_string(var);
  if (num_.coeffs().size() > 1 || n[0] == '-') n = "(" + n + ")";
  return n + "/(" + d + ")";
}

}  // namespace k3
