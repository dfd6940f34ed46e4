#pragma once

// The specification-pattern catalogue: nine behavioural pattern kinds, each
// instantiated in five scopes (globally, before r, after q, between q and r,
// after q until r).  The templates are written over the placeholder alphabet
// {p, q, r, s, t, z}: p is the primary event, s and t are effects or causes,
// q opens a scope, r closes it, and z is the constrained chain's forbidden
// event.  Weak until does not exist in the grammar, so a W b appears
// expanded as (a U b) | G(a) throughout.
//
// Two syntactic traps the templates must respect: negation binds tighter
// than U, so "no p until r" is (!p) U r and not !p U r (the latter negates
// the whole until); and -> binds tighter than &, so compound antecedents are
// always parenthesised.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "formula.hpp"
#include "syntax.hpp"

namespace ltlmon {

struct PatternTemplate {
  std::string kind;
  std::string scope;
  std::string text;
};

inline const std::vector<std::string>& pattern_kinds() {
  static const std::vector<std::string> kinds{
      "absence",          "existence", "bounded_existence",
      "universality",     "precedence", "response",
      "precedence_chain", "response_chain", "constrained_chain"};
  return kinds;
}

inline const std::vector<std::string>& pattern_scopes() {
  static const std::vector<std::string> scopes{
      "globally", "before_r", "after_q", "between_q_and_r",
      "after_q_until_r"};
  return scopes;
}

inline const std::set<std::string>& placeholder_alphabet() {
  static const std::set<std::string> props{"p", "q", "r", "s", "t", "z"};
  return props;
}

inline const std::vector<PatternTemplate>& pattern_catalogue() {
  // At-most-two-p-states, the workhorse of bounded existence: an alternation
  // of !p and p segments that may stop early or run forever.
  static const std::string kTwoSegments =
      "((!p) U ((p U (((!p) U ((p U G(!p)) | G(p))) | G(!p))) | G(p))) "
      "| G(!p)";

  static const std::vector<PatternTemplate> catalogue{
      // p never holds.
      {"absence", "globally", "G(!p)"},
      {"absence", "before_r", "F(r) -> ((!p) U r)"},
      {"absence", "after_q", "G(q -> G(!p))"},
      {"absence", "between_q_and_r", "G((q & !r & F(r)) -> ((!p) U r))"},
      {"absence", "after_q_until_r",
       "G((q & !r) -> (((!p) U r) | G(!p)))"},

      // p eventually holds.
      {"existence", "globally", "F(p)"},
      {"existence", "before_r", "((!r) U (p & !r)) | G(!r)"},
      {"existence", "after_q", "G(!q) | F(q & F(p))"},
      {"existence", "between_q_and_r",
       "G((q & !r) -> (((!r) U (p & !r)) | G(!r)))"},
      {"existence", "after_q_until_r",
       "G((q & !r) -> ((!r) U (p & !r)))"},

      // p holds at most twice.
      {"bounded_existence", "globally", kTwoSegments},
      {"bounded_existence", "before_r",
       "F(r) -> ((!p & !r) U (r | ((p & !r) U (r | ((!p & !r) U (r | "
       "((p & !r) U (r | ((!p) U r)))))))))"},
      {"bounded_existence", "after_q",
       "F(q) -> ((!q) U (q & (" + kTwoSegments + ")))"},
      {"bounded_existence", "between_q_and_r",
       "G((q & F(r)) -> ((!p & !r) U (r | ((p & !r) U (r | ((!p & !r) U "
       "(r | ((p & !r) U (r | ((!p) U r))))))))))"},
      {"bounded_existence", "after_q_until_r",
       "G(q -> ((!p & !r) U (r | ((p & !r) U (r | ((!p & !r) U (r | "
       "((p & !r) U (r | ((!p) U r) | G(!p) | (p U r) | G(p))))))))))"},

      // p always holds.
      {"universality", "globally", "G(p)"},
      {"universality", "before_r", "F(r) -> (p U r)"},
      {"universality", "after_q", "G(q -> G(p))"},
      {"universality", "between_q_and_r",
       "G((q & !r & F(r)) -> (p U r))"},
      {"universality", "after_q_until_r",
       "G((q & !r) -> ((p U r) | G(p)))"},

      // s precedes p.
      {"precedence", "globally", "((!p) U s) | G(!p)"},
      {"precedence", "before_r", "F(r) -> ((!p) U (s | r))"},
      {"precedence", "after_q", "G(!q) | F(q & (((!p) U s) | G(!p)))"},
      {"precedence", "between_q_and_r",
       "G((q & !r & F(r)) -> ((!p) U (s | r)))"},
      {"precedence", "after_q_until_r",
       "G((q & !r) -> (((!p) U (s | r)) | G(!p)))"},

      // s responds to p.
      {"response", "globally", "G(p -> F(s))"},
      {"response", "before_r",
       "F(r) -> ((p -> ((!r) U (s & !r))) U r)"},
      {"response", "after_q", "G(q -> G(p -> F(s)))"},
      {"response", "between_q_and_r",
       "G((q & !r & F(r)) -> ((p -> ((!r) U (s & !r))) U r))"},
      {"response", "after_q_until_r",
       "G((q & !r) -> (((p -> ((!r) U (s & !r))) U r) | "
       "G(p -> ((!r) U (s & !r)))))"},

      // s and then t precede p.
      {"precedence_chain", "globally",
       "F(p) -> ((!p) U (s & !p & X((!p) U t)))"},
      {"precedence_chain", "before_r",
       "F(r) -> ((!p) U (r | (s & !p & X((!p) U t))))"},
      {"precedence_chain", "after_q",
       "G(!q) | ((!q) U (q & (F(p) -> ((!p) U (s & !p & X((!p) U t))))))"},
      {"precedence_chain", "between_q_and_r",
       "G((q & F(r)) -> ((!p) U (r | (s & !p & X((!p) U t)))))"},
      {"precedence_chain", "after_q_until_r",
       "G(q -> (F(p) -> ((!p) U (r | (s & !p & X((!p) U t))))))"},

      // p is followed by s and then t.
      {"response_chain", "globally", "G(p -> F(s & X(F(t))))"},
      {"response_chain", "before_r",
       "F(r) -> ((p -> ((!r) U (s & !r & X((!r) U t)))) U r)"},
      {"response_chain", "after_q", "G(q -> G(p -> F(s & X(F(t)))))"},
      {"response_chain", "between_q_and_r",
       "G((q & F(r)) -> ((p -> ((!r) U (s & !r & X((!r) U t)))) U r))"},
      {"response_chain", "after_q_until_r",
       "G(q -> ((p -> ((!r) U (s & !r & X((!r) U t)))) U (r | "
       "G(p -> ((!r) U (s & !r & X((!r) U t)))))))"},

      // p is followed by s and then t, with no z in between.
      {"constrained_chain", "globally",
       "G(p -> F(s & !z & X((!z) U t)))"},
      {"constrained_chain", "before_r",
       "F(r) -> ((p -> ((!r) U (s & !r & !z & X((!r & !z) U t)))) U r)"},
      {"constrained_chain", "after_q",
       "G(q -> G(p -> F(s & !z & X((!z) U t))))"},
      {"constrained_chain", "between_q_and_r",
       "G((q & F(r)) -> ((p -> ((!r) U (s & !r & !z & X((!r & !z) U t)))) "
       "U r))"},
      {"constrained_chain", "after_q_until_r",
       "G(q -> ((p -> ((!r) U (s & !r & !z & X((!r & !z) U t)))) U (r | "
       "G(p -> ((!r) U (s & !r & !z & X((!r & !z) U t)))))))"},
  };
  return catalogue;
}

// The five scope variants of one kind, in catalogue order.
inline std::vector<PatternTemplate> patterns_of_kind(const std::string& kind) {
  std::vector<PatternTemplate> out;
  for (const PatternTemplate& t : pattern_catalogue())
    if (t.kind == kind) out.push_back(t);
  if (out.empty())
    throw std::invalid_argument("unknown pattern kind '" + kind + "'");
  return out;
}

inline Formula parse_pattern(const PatternTemplate& t) {
  return parse_formula(t.text, placeholder_alphabet());
}

// Substitutes proposition names throughout; names without a mapping stay.
// Distinct placeholders may map to the same proposition.
inline Formula rename_props(const Formula& f,
                            const std::map<std::string, std::string>& m) {
  const auto mapped = [&m](const std::string& name) {
    auto it = m.find(name);
    return it == m.end() ? name : it->second;
  };
  switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Sharp:
      return f;
    case Op::Atom:
      return Formula::atom(mapped(f.name()));
    case Op::Prev:
      return Formula::prev(f.steps(), mapped(f.name()));
    case Op::Not:
      return Formula::neg(rename_props(f.lhs(), m));
    case Op::Next:
      return Formula::next(rename_props(f.lhs(), m));
    case Op::Finally:
      return Formula::eventually(rename_props(f.lhs(), m));
    case Op::Globally:
      return Formula::always(rename_props(f.lhs(), m));
    case Op::And:
      return Formula::conj(rename_props(f.lhs(), m), rename_props(f.rhs(), m));
    case Op::Or:
      return Formula::disj(rename_props(f.lhs(), m), rename_props(f.rhs(), m));
    case Op::Until:
      return Formula::until(rename_props(f.lhs(), m),
                            rename_props(f.rhs(), m));
  }
  throw internal_error("rename_props: unhandled operator");
}

}  // namespace ltlmon
