#pragma once

// Formula progression (rewriting) over single events and finite traces, and
// the centralised three-valued monitor built on it.  Progression pushes a
// formula one event forward:
//
//   P(p, e)        = true if p in e, false otherwise
//   P(!f, e)       = !P(f, e)
//   P(f | g, e)    = P(f, e) | P(g, e)         (& dually)
//   P(X f, e)      = f
//   P(f U g, e)    = P(g, e) | P(f, e) & (f U g)
//   P(F f, e)      = P(f, e) | F f
//   P(G f, e)      = P(f, e) & G f
//
// The result is simplified before it is returned.  A run of consecutive
// progressions yields the three-valued verdict: once the rewritten formula
// collapses to true the observed trace is a good prefix (every infinite
// extension satisfies the original formula), once it collapses to false a
// bad one; anything else reads as "?".

#include <cstddef>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "formula.hpp"
#include "lasso.hpp"
#include "simplify.hpp"

namespace ltlmon {

enum class Verdict3 { Top, Bottom, Unknown };

inline const char* to_string(Verdict3 v) {
  switch (v) {
    case Verdict3::Top: return "TOP";
    case Verdict3::Bottom: return "BOTTOM";
    case Verdict3::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

inline Verdict3 verdict_of(const Formula& f) {
  if (f.is(Op::True)) return Verdict3::Top;
  if (f.is(Op::False)) return Verdict3::Bottom;
  return Verdict3::Unknown;
}

namespace detail {

inline Formula progress_raw(const Formula& f, const Event& e,
                            std::unordered_map<const void*, Formula>& memo) {
  auto it = memo.find(f.key());
  if (it != memo.end()) return it->second;

  Formula out;
  switch (f.op()) {
    case Op::True: out = Formula::tt(); break;
    case Op::False: out = Formula::ff(); break;
    case Op::Atom:
      out = has_prop(e, f.name()) ? Formula::tt() : Formula::ff();
      break;
    case Op::Not:
      out = Formula::neg(progress_raw(f.lhs(), e, memo));
      break;
    case Op::And:
      out = Formula::conj(progress_raw(f.lhs(), e, memo),
                          progress_raw(f.rhs(), e, memo));
      break;
    case Op::Or:
      out = Formula::disj(progress_raw(f.lhs(), e, memo),
                          progress_raw(f.rhs(), e, memo));
      break;
    case Op::Next: out = f.lhs(); break;
    case Op::Until:
      out = Formula::disj(
          progress_raw(f.rhs(), e, memo),
          Formula::conj(progress_raw(f.lhs(), e, memo), f));
      break;
    case Op::Finally:
      out = Formula::disj(progress_raw(f.lhs(), e, memo), f);
      break;
    case Op::Globally:
      out = Formula::conj(progress_raw(f.lhs(), e, memo), f);
      break;
    case Op::Sharp:
    case Op::Prev:
      throw std::invalid_argument(
          "centralised progression expects a past-free, sharp-free formula");
  }
  memo.emplace(f.key(), out);
  return out;
}

}  // namespace detail

// One progression step; f must be past-free and sharp-free.  Returns the
// simplified rewrite.
inline Formula progress_event(const Formula& f, const Event& e) {
  if (f.has_prev() || f.has_sharp())
    throw std::invalid_argument(
        "centralised progression expects a past-free, sharp-free formula");
  std::unordered_map<const void*, Formula> memo;
  return simplify(detail::progress_raw(f, e, memo));
}

// Progression folded over a whole finite trace (at least one event).
inline Formula progress_trace(const Formula& f, const std::vector<Event>& u) {
  if (u.empty())
    throw std::invalid_argument("progress_trace needs at least one event");
  Formula cur = f;
  for (const Event& e : u) cur = progress_event(cur, e);
  return cur;
}

// Centralised three-valued monitor: holds the rewritten obligation and
// freezes once a conclusive verdict is reached.
struct CentralMonitor {
  Formula obligation;
  std::size_t steps = 0;  // events consumed
  Verdict3 verdict = Verdict3::Unknown;
};

inline CentralMonitor central_init(const Formula& spec) {
  if (spec.has_prev() || spec.has_sharp())
    throw std::invalid_argument(
        "the monitored specification must be past-free and sharp-free");
  return CentralMonitor{simplify(spec), 0, Verdict3::Unknown};
}

inline CentralMonitor central_step(const CentralMonitor& m, const Event& e) {
  if (m.verdict != Verdict3::Unknown) return m;  // frozen
  CentralMonitor out;
  out.obligation = progress_event(m.obligation, e);
  out.steps = m.steps + 1;
  out.verdict = verdict_of(out.obligation);
  return out;
}

}  // namespace ltlmon
