#include "hamon/constraint_text.hpp"

#include "hamon/errors.hpp"

#include <cctype>
#include <sstream>

namespace hamon {

namespace {

struct Scanner {
  std::string_view s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool consume(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) { ++pos; return true; }
    return false;
  }
  std::string_view take_number() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() &&
           (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.' || s[pos] == '/'))
      ++pos;
    return s.substr(start, pos - start);
  }
  std::string_view take_ident() {
    skip_ws();
    std::size_t start = pos;
    if (pos < s.size() &&
        (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) {
      ++pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
        ++pos;
    }
    return s.substr(start, pos - start);
  }
};

} // namespace

std::string_view strict_rel_text(StrictRel r) {
  switch (r) {
    case StrictRel::lt: return "<";
    case StrictRel::le: return "<=";
    case StrictRel::eq: return "=";
    case StrictRel::ge: return ">=";
    case StrictRel::gt: return ">";
  }
  return "?";
}

ParsedConstraint parse_constraint(std::string_view text, const VarSpace& space,
                                  ConstraintSyntax syntax) {
  Scanner sc{text};
  ParsedConstraint out;
  out.coeffs.assign(space.dim(), Rational(0));

  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError("bad constraint \"" + std::string(text) + "\": " + why);
  };

  bool any_term = false;
  while (true) {
    bool neg = false;
    if (sc.consume('-')) neg = true;
    else if (sc.consume('+')) { /* explicit plus */ }
    else if (any_term) break;

    Rational coeff(1);
    char c = sc.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto num = sc.take_number();
      coeff = Rational::from_string(num);
      if (!sc.consume('*')) throw fail("expected '*' between coefficient and variable");
    }
    auto ident = sc.take_ident();
    if (ident.empty()) throw fail("expected variable name");
    bool primed = sc.pos < sc.s.size() && sc.s[sc.pos] == '\'';
    if (primed) ++sc.pos;
    if (primed != syntax.derivatives)
      throw fail(syntax.derivatives ? "flow constraints use primed variables"
                                    : "primed variable outside a flow constraint");
    auto idx = space.index(ident);
    if (!idx) throw fail("unknown variable '" + std::string(ident) + "'");
    if (neg) coeff = -coeff;
    out.coeffs[*idx] += coeff;
    any_term = true;

    char nxt = sc.peek();
    if (nxt == '+' || nxt == '-') continue;
    break;
  }
  if (!any_term) throw fail("no left-hand side terms");

  sc.skip_ws();
  if (sc.consume('<')) {
    out.rel = sc.consume('=') ? StrictRel::le : StrictRel::lt;
  } else if (sc.consume('>')) {
    out.rel = sc.consume('=') ? StrictRel::ge : StrictRel::gt;
  } else if (sc.consume('=')) {
    out.rel = StrictRel::eq;
  } else {
    throw fail("expected relation (<=, =, >=)");
  }
  if (!syntax.allow_strict && (out.rel == StrictRel::lt || out.rel == StrictRel::gt))
    throw fail("strict relation not allowed here");

  bool bneg = sc.consume('-');
  auto num = sc.take_number();
  if (num.empty()) throw fail("expected rational bound");
  out.bound = Rational::from_string(num);
  if (bneg) out.bound = -out.bound;
  if (!sc.eof()) throw fail("trailing input");
  return out;
}

LinearConstraint to_linear(const ParsedConstraint& pc) {
  Rel r;
  switch (pc.rel) {
    case StrictRel::le: r = Rel::le; break;
    case StrictRel::eq: r = Rel::eq; break;
    case StrictRel::ge: r = Rel::ge; break;
    default: throw DomainError("strict constraint cannot become a closed constraint directly");
  }
  return LinearConstraint{pc.coeffs, r, pc.bound};
}

std::string print_constraint(const LinearConstraint& c, const VarSpace& space,
                             bool derivatives) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
    if (c.coeffs[i].sign() == 0) continue;
    Rational a = c.coeffs[i];
    if (first) {
      if (a.sign() < 0) { os << "-"; a = -a; }
    } else {
      os << (a.sign() < 0 ? " - " : " + ");
      if (a.sign() < 0) a = -a;
    }
    if (a != Rational(1)) os << a.str() << "*";
    os << space.name(i);
    if (derivatives) os << "'";
    first = false;
  }
  if (first) os << "0*" << space.name(0);
  os << " " << rel_text(c.rel) << " " << c.bound.str();
  return os.str();
}

} // namespace hamon
