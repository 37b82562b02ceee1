#pragma once

#include <cctype>
#include <stdexcept>
#include <string>

#include "k3/poly/mpoly.hpp"

namespace k3 {

/// Syntax or name error in polynomial text; `position` is a 0-based byte offset.
class ParseError : public std::invalid_argument {
public:
  ParseError(const std::string& msg, std::size_t position)
      : std::invalid_argument(msg + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/// The element named by the field parameter (number field generator or t); throws for ℚ.
template <class K>
K field_parameter(const FieldDesc& f);
template <>
inline Rational field_parameter<Rational>(const FieldDesc&) {
  throw std::invalid_argument("the rational field has no parameter");
}
template <>
inline NFElem field_parameter<NFElem>(const FieldDesc& f) {
  if (!f.number_field) throw std::invalid_argument("ring has no number field");
  return NFElem::generator(f.number_field);
}
template <>
inline RatFunc field_parameter<RatFunc>(const FieldDesc&) {
  return RatFunc::t();
}

namespace detail {

template <class K>
class PolyParser {
public:
  PolyParser(const std::string& s, RingPtr ring) : s_(s), ring_(std::move(ring)) {}

  MPoly<K> parse() {
    MPoly<K> r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  MPoly<K> expr() {
    skip();
    MPoly<K> r(ring_);
    if (eat('-')) r = -term();
    else {
      eat('+');
      r = term();
    }
    while (true) {
      if (eat('+')) r += term();
      else if (eat('-')) r -= term();
      else return r;
    }
  }
  MPoly<K> term() {
    MPoly<K> r = factor();
    while (true) {
      if (eat('*')) {
        r *= factor();
      } else if (eat('/')) {
        std::size_t at = pos_;
        MPoly<K> d = factor();
        if (d.is_zero()) throw ParseError("division by zero", at);
        if (!d.is_constant()) throw ParseError("division by a non-constant polynomial", at);
        r = r.scaled(K(1) / d.lc());
      } else {
        return r;
      }
    }
  }
  MPoly<K> factor() {
    skip();
    if (eat('-')) return -factor();
    MPoly<K> b = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent");
      unsigned long e = std::stoul(s_.substr(start, pos_ - start));
      if (e > 10000) throw ParseError("exponent too large", start);
      b = pow(b, static_cast<unsigned>(e));
    }
    return b;
  }
  MPoly<K> atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (eat('(')) {
      MPoly<K> r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return MPoly<K>(ring_, FieldTraits<K>::from_rational(Rational(Integer(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (auto idx = ring_->index_of(name)) return MPoly<K>::var(ring_, *idx);
      if (!ring_->field().param.empty() && name == ring_->field().param)
        return MPoly<K>(ring_, field_parameter<K>(ring_->field()));
      throw ParseError("unknown variable '" + name + "'", start);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  RingPtr ring_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses polynomial text (grammar in docs/polynomial-grammar.md) into `ring`.
template <class K>
MPoly<K> parse_poly(const std::string& text, const RingPtr& ring) {
  return detail::PolyParser<K>(text, ring).parse();
}

}  // namespace k3
