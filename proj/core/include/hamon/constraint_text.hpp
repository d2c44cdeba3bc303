#pragma once

#include "hamon/varspace.hpp"

#include <string>
#include <string_view>

namespace hamon {

enum class StrictRel { lt, le, eq, ge, gt };

std::string_view strict_rel_text(StrictRel r);

/// A parsed "sum of coeff*var terms REL rational" line. Strict relations
/// only appear in safety-spec atoms; model files are closed.
struct ParsedConstraint {
  std::vector<Rational> coeffs;
  StrictRel rel{StrictRel::le};
  Rational bound{0};
};

struct ConstraintSyntax {
  bool derivatives = false;   // variables carry a prime suffix (flow constraints)
  bool allow_strict = false;  // '<' and '>' permitted (safety specs)
};

/// Parses e.g. "x1 - x2 <= 4", "2*x1 + 3/2*x2 >= 8.5", "x1' = 36".
/// Throws ParseError on malformed input or unknown variables.
ParsedConstraint parse_constraint(std::string_view text, const VarSpace& space,
                                  ConstraintSyntax syntax = {});

/// Closed constraints convert directly.
LinearConstraint to_linear(const ParsedConstraint& pc);

/// Renders a constraint in the shared grammar (round-trips through
/// parse_constraint). With `derivatives`, variable names get a prime suffix.
std::string print_constraint(const LinearConstraint& c, const VarSpace& space,
                             bool derivatives = false);

} // namespace hamon
