#include "cuspcalc/rational.hpp"

#include <cctype>

#include "cuspcalc/error.hpp"

namespace cuspcalc {

std::string to_string(const Integer& n) { return n.get_str(); }

long to_long(const Integer& n) {
  if (!n.fits_slong_p()) throw DomainError("integer out of range: " + n.get_str());
  return n.get_si();
}

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

static Integer parse_integer(std::string_view s, std::string_view whole) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) throw DomainError("malformed rational: '" + std::string(whole) + "'");
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j])))
      throw DomainError("malformed rational: '" + std::string(whole) + "'");
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return Integer(digits, 10);
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  Integer n = parse_integer(text.substr(0, slash), text);
  auto dtext = text.substr(slash + 1);
  if (!dtext.empty() && (dtext[0] == '-' || dtext[0] == '+'))
    throw DomainError("malformed rational: '" + std::string(text) + "'");
  return Rational(n, parse_integer(dtext, text));
}

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_str();
}

std::string Rational::fraction_str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::operator-() const {
  Rational r;
  r.v_ = -v_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  v_ += o.v_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  v_ -= o.v_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  v_ *= o.v_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.v_ == 0) throw DomainError("division by zero");
  v_ /= o.v_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace cuspcalc
