#pragma once

// Bottom-up boolean simplification used after every progression step to keep
// obligations small.  The rule set is deliberately propositional-only:
//
//   constants     !true = false, !false = true, !!f = f,
//                 true & f = f, false & f = false, and the duals for |
//   sharp         # & f = f  (# is the neutral element monitors trade away;
//                 # | f is left alone, no law applies to it)
//   flattening    &/| chains are flattened, deduplicated (first occurrence
//                 wins) and rebuilt right-nested
//   complements   f & !f = false, f | !f = true within one flattened chain
//   absorption    f & (f | g) = f and f | (f & g) = f
//   pruning       while one chain item is inspected, every sibling may be
//                 assumed true (&) resp. false (|) at occurrences reachable
//                 through &, | and ! alone, e.g. f & (g | (f & h)) = f & (g | h)
//
// Temporal operators shield their bodies from pruning (a sibling only speaks
// about the current instant), so every rule is a propositional equivalence:
// temporal_size never grows and the result stays semantically equal on every
// word.  The function is idempotent.  Pruning is what keeps progression
// obligations bounded on specifications like (F a) U (G b), whose rewrites
// otherwise nest one disjunction deeper per event.

#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "formula.hpp"

namespace ltlmon {

namespace detail {

// Keyed by structural value, not node address: the pruning rebuild feeds
// freshly built intermediates through simp, and an address key could dangle
// and get recycled once such a temporary dies.
using SimpMemo = std::unordered_map<Formula, Formula, FormulaHash>;

inline Formula simp(const Formula& f, SimpMemo& memo);

// Flattens an already-simplified child into `items`, recursing through nodes
// of the same connective.
inline void flatten_into(Op op, const Formula& f, std::vector<Formula>& items) {
  if (f.is(op)) {
    flatten_into(op, f.lhs(), items);
    flatten_into(op, f.rhs(), items);
  } else {
    items.push_back(f);
  }
}

// f with every occurrence of `target` reachable through &, | and ! replaced
// by the given constant.  Occurrences below a temporal operator stay put.
inline Formula subst_bool(const Formula& f, const Formula& target, bool value,
                          bool& hit) {
  if (f == target) {
    hit = true;
    return value ? Formula::tt() : Formula::ff();
  }
  switch (f.op()) {
    case Op::Not: {
      Formula a = subst_bool(f.lhs(), target, value, hit);
      return a.key() == f.lhs().key() ? f : Formula::neg(a);
    }
    case Op::And:
    case Op::Or: {
      Formula a = subst_bool(f.lhs(), target, value, hit);
      Formula b = subst_bool(f.rhs(), target, value, hit);
      if (a.key() == f.lhs().key() && b.key() == f.rhs().key()) return f;
      return f.is(Op::And) ? Formula::conj(a, b) : Formula::disj(a, b);
    }
    default:
      return f;
  }
}

inline Formula simp_chain(Op op, const Formula& lhs, const Formula& rhs,
                          SimpMemo& memo) {
  const bool is_and = op == Op::And;
  std::vector<Formula> raw;
  flatten_into(op, simp(lhs, memo), raw);
  flatten_into(op, simp(rhs, memo), raw);

  const Formula absorbing = is_and ? Formula::ff() : Formula::tt();
  bool saw_true_unit = false;  // a dropped "true" (&) resp. "false" (|)
  bool saw_sharp = false;

  std::vector<Formula> items;
  std::unordered_set<Formula, FormulaHash> seen;
  for (const Formula& c : raw) {
    if (c == absorbing) return absorbing;
    if (is_and && c.is(Op::Sharp)) {
      saw_sharp = true;
      continue;
    }
    if ((is_and && c.is(Op::True)) || (!is_and && c.is(Op::False))) {
      saw_true_unit = true;
      continue;
    }
    if (!seen.insert(c).second) continue;  // idempotence
    // Complement against anything already collected.
    if (c.is(Op::Not) ? seen.count(c.lhs()) != 0
                      : seen.count(Formula::neg(c)) != 0)
      return absorbing;
    items.push_back(c);
  }

  // Absorption: drop any item that is the dual connective over a chain
  // containing another collected item.
  if (items.size() > 1) {
    const Op dual = is_and ? Op::Or : Op::And;
    std::vector<Formula> kept;
    for (const Formula& c : items) {
      bool absorbed = false;
      if (c.is(dual)) {
        std::vector<Formula> inner;
        flatten_into(dual, c, inner);
        for (const Formula& d : inner) {
          if (d != c && seen.count(d)) {
            absorbed = true;
            break;
          }
        }
      }
      if (!absorbed) kept.push_back(c);
    }
    items.swap(kept);
  }

  // Pruning.  Items are distinct after deduplication, so a hit always sits
  // strictly inside the inspected item; folding the planted constant then
  // deletes at least its parent connective, which bounds the rebuild
  // recursion.  Sharp is not a truth value, hence the guards.
  if (items.size() > 1) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (items[i].has_sharp()) continue;
      for (std::size_t j = 0; j < items.size(); ++j) {
        if (j == i || items[j].has_sharp()) continue;
        bool hit = false;
        Formula pruned = subst_bool(items[i], items[j], is_and, hit);
        if (!hit) continue;
        items[i] = pruned;
        return simp(is_and ? conj_all(items) : disj_all(items), memo);
      }
    }
  }

  if (items.empty()) {
    // Only units were present: true&true=true, #&#=#, true&#=true.
    if (is_and && saw_sharp && !saw_true_unit) return Formula::sharp();
    return is_and ? Formula::tt() : Formula::ff();
  }
  return is_and ? conj_all(items) : disj_all(items);
}

inline Formula simp(const Formula& f, SimpMemo& memo) {
  auto it = memo.find(f);
  if (it != memo.end()) return it->second;

  Formula out = f;
  switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Sharp:
    case Op::Atom:
    case Op::Prev:
      break;
    case Op::Not: {
      Formula c = simp(f.lhs(), memo);
      if (c.is(Op::True)) out = Formula::ff();
      else if (c.is(Op::False)) out = Formula::tt();
      else if (c.is(Op::Not)) out = c.lhs();
      else out = Formula::neg(c);
      break;
    }
    case Op::Next: out = Formula::next(simp(f.lhs(), memo)); break;
    case Op::Finally: out = Formula::eventually(simp(f.lhs(), memo)); break;
    case Op::Globally: out = Formula::always(simp(f.lhs(), memo)); break;
    case Op::Until:
      out = Formula::until(simp(f.lhs(), memo), simp(f.rhs(), memo));
      break;
    case Op::And: out = simp_chain(Op::And, f.lhs(), f.rhs(), memo); break;
    case Op::Or: out = simp_chain(Op::Or, f.lhs(), f.rhs(), memo); break;
  }
  memo.emplace(f, out);
  return out;
}

}  // namespace detail

inline Formula simplify(const Formula& f) {
  detail::SimpMemo memo;
  Formula cur = detail::simp(f, memo);
  // One bottom-up pass is a fixpoint for this rule set; the guard loop is a
  // cheap safety net in case a rule combination ever re-enables another.
  for (int round = 0; round < 8; ++round) {
    detail::SimpMemo again;
    Formula nxt = detail::simp(cur, again);
    if (nxt == cur) return cur;
    cur = nxt;
  }
  throw internal_error("simplify did not reach a fixpoint");
}

}  // namespace ltlmon
