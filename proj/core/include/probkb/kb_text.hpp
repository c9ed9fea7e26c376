#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "probkb/kb.hpp"

namespace probkb {

// Text format, one construct per line, '#' comments:
//   atoms: bird penguin fly have_legs
//   L: penguin => bird
//   P: (fly | penguin) [0, 0.05]
// Event grammar: ! & v, true/false, parentheses; precedence ! > & > v.
// "a => b" on an L line is the logical constraint with antecedent a and
// consequent b.
KnowledgeBase parse_kb(std::string_view text);  // throws ParseError
std::string serialize_kb(const KnowledgeBase& kb);

// Event over an existing atom table; unknown atoms are a ParseError.
Event parse_event(std::string_view text, const AtomTable& atoms);
std::string event_to_string(const Event& e, const AtomTable& atoms);

// "(psi | phi)" optionally followed by "[l, u]".
struct Query {
  ConditionalEvent cond;
  std::optional<Rational> lower, upper;
};
Query parse_query(std::string_view text, const AtomTable& atoms);
std::string query_to_string(const ConditionalEvent& q, const AtomTable& atoms);

// Classical default query "psi <= phi" (consequent psi, antecedent phi).
struct DefaultQuery {
  Event consequent;
  Event antecedent;
};
DefaultQuery parse_default_query(std::string_view text, const AtomTable& atoms);

}  // namespace probkb
