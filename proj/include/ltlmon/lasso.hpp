#pragma once

// Events and ultimately-periodic (lasso) words, plus an exact LTL evaluator
// over them.  A lasso word w = prefix . loop^omega stands in for an infinite
// trace, which is what makes semantic equivalence of formulas testable: two
// formulas agree on all infinite words iff no sampled lasso separates them,
// and every individual check here is exact.
//
// Truth of a subformula g at position i is eventually periodic: once i is
// past prefix + prev_depth(g), shifting i by the loop length cannot change
// anything g can observe.  The evaluator memoises on (subformula, position
// canonicalised by that periodicity), which both bounds the table by
// |subformulas| * (|prefix| + prev_depth + |loop|) and caps the scan windows
// used for U, F and G.

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "formula.hpp"

namespace ltlmon {

using Event = std::set<std::string>;

inline bool has_prop(const Event& e, const std::string& p) {
  return e.count(p) != 0;
}

struct LassoWord {
  std::vector<Event> prefix;
  std::vector<Event> loop;  // must be non-empty
};

inline const Event& word_at(const LassoWord& w, std::size_t i) {
  if (i < w.prefix.size()) return w.prefix[i];
  return w.loop[(i - w.prefix.size()) % w.loop.size()];
}

namespace detail {

class LassoEval {
 public:
  explicit LassoEval(const LassoWord& w)
      : w_(w), pre_(w.prefix.size()), loop_(w.loop.size()) {}

  bool run(const Formula& f, std::size_t i) {
    // Truth of f at positions >= stab is periodic with the loop length.
    const std::size_t stab = pre_ + f.prev_depth();
    const std::size_t canon = i < stab ? i : stab + (i - stab) % loop_;
    const Key key{f.key(), canon};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool v = eval(f, i, stab);
    memo_.emplace(key, v);
    return v;
  }

 private:
  bool eval(const Formula& f, std::size_t i, std::size_t stab) {
    switch (f.op()) {
      case Op::True: return true;
      case Op::False: return false;
      case Op::Sharp:
        throw std::invalid_argument("'#' has no lasso-word semantics");
      case Op::Atom: return has_prop(word_at(w_, i), f.name());
      case Op::Prev:
        if (i < f.steps())
          throw std::out_of_range(
              "X~ reaches before the start of the word (position " +
              std::to_string(i) + ", depth " + std::to_string(f.steps()) +
              ")");
        return has_prop(word_at(w_, i - f.steps()), f.name());
      case Op::Not: return !run(f.lhs(), i);
      case Op::And: return run(f.lhs(), i) && run(f.rhs(), i);
      case Op::Or: return run(f.lhs(), i) || run(f.rhs(), i);
      case Op::Next: return run(f.lhs(), i + 1);
      case Op::Finally:
      case Op::Globally:
      case Op::Until: {
        // Positions [max(i, stab), max(i, stab) + loop) cover one full
        // period of every subformula involved, so a scan that reaches the
        // end of that window without resolving never will.
        const std::size_t end = (i < stab ? stab : i) + loop_;
        for (std::size_t k = i; k < end; ++k) {
          if (f.is(Op::Globally)) {
            if (!run(f.lhs(), k)) return false;
          } else {
            const Formula& goal = f.is(Op::Until) ? f.rhs() : f.lhs();
            if (run(goal, k)) return true;
            if (f.is(Op::Until) && !run(f.lhs(), k)) return false;
          }
        }
        return f.is(Op::Globally);
      }
    }
    throw internal_error("unhandled operator in lasso evaluation");
  }

  struct Key {
    const void* node;
    std::size_t pos;
    bool operator==(const Key& o) const {
      return node == o.node && pos == o.pos;
    }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<const void*>{}(k.node) * 1000003u ^ k.pos;
    }
  };

  const LassoWord& w_;
  std::size_t pre_, loop_;
  std::unordered_map<Key, bool, KeyHash> memo_;
};

}  // namespace detail

// Exact truth of f on w at `pos` (default: the start of the word).  f may
// contain X~ obligations as long as they never look past the beginning of
// the word from where they sit; # is rejected.
inline bool eval_lasso(const Formula& f, const LassoWord& w,
                       std::size_t pos = 0) {
  if (w.loop.empty())
    throw std::invalid_argument("lasso words need a non-empty loop");
  if (f.has_sharp())
    throw std::invalid_argument("'#' has no lasso-word semantics");
  detail::LassoEval ev(w);
  return ev.run(f, pos);
}

}  // namespace ltlmon
