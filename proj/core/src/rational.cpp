#include "hamon/rational.hpp"

#include "hamon/errors.hpp"

#include <cctype>
#include <ostream>

namespace hamon {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

} // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::from_raw(mpq_class q) {
  q.canonicalize();
  Rational r;
  r.v_ = std::move(q);
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (sgn(o.v_) == 0) throw DomainError("division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::from_string(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty rational literal");

  bool neg = false;
  if (text.front() == '+' || text.front() == '-') {
    neg = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) throw ParseError("sign without digits in rational literal");

  std::string s(text);
  mpq_class v;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw ParseError("malformed fraction literal: " + s);
    mpz_class d(den);
    if (d == 0) throw DomainError("fraction literal with zero denominator: " + s);
    v = mpq_class(mpz_class(num), d);
  } else if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac))
      throw ParseError("malformed decimal literal: " + s);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class n = mpz_class(whole) * scale + mpz_class(frac);
    v = mpq_class(n, scale);
  } else {
    if (!all_digits(s)) throw ParseError("malformed integer literal: " + s);
    v = mpq_class(mpz_class(s));
  }
  v.canonicalize();
  if (neg) v = -v;
  return from_raw(std::move(v));
}

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

} // namespace hamon
