#pragma once

// The local-monitor side of decentralised monitoring.  Each component runs
// the same rewriting loop:
//
//   receive   conjoin obligations sent by peers in the previous round
//   progress  rewrite against the local event, turning foreign propositions
//             into past obligations X~^m p ("p held m events ago")
//   evaluate  true/false ends the whole run
//   send      if unresolved past obligations remain, hand the entire
//             rewritten formula to the monitor that can resolve the most
//             urgent one, and keep # in its place
//
// Progression differs from the centralised rules only on propositions:
//
//   P_i(p, e)       = true if p in e, false if p in AP_i, else X~ p
//   P_i(X~^m p, e)  = true/false by looking the local event up m steps back
//                     when p in AP_i, else X~^(m+1) p
//   P_i(#, e)       = #
//
// Two theorem-backed invariants are enforced unconditionally: a lookup never
// reaches before the start of the trace, and a past obligation never grows
// beyond min(#components, t+1).

#include <cstddef>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "architecture.hpp"
#include "formula.hpp"
#include "lasso.hpp"
#include "progression.hpp"
#include "simplify.hpp"

namespace ltlmon {

// The local events a monitor has seen, newest first, trimmed to the window
// past obligations can reach (the current event plus #components older
// ones).  total() counts every event ever pushed, i.e. t+1.
class EventHistory {
 public:
  explicit EventHistory(std::size_t components)
      : capacity_(components + 1) {}

  void push(Event e) {
    window_.push_front(std::move(e));
    if (window_.size() > capacity_) window_.pop_back();
    ++total_;
  }

  // The event m steps back; m = 0 is the current event.
  const Event& back(std::size_t m) const {
    if (m >= total_)
      throw internal_error(
          "past obligation reaches before the start of the trace");
    if (m >= window_.size())
      throw internal_error("past obligation outlived the history window");
    return window_[m];
  }

  std::size_t components() const { return capacity_ - 1; }
  std::size_t total() const { return total_; }

 private:
  std::size_t capacity_;
  std::size_t total_ = 0;
  std::deque<Event> window_;
};

namespace detail {

inline Formula decent_raw(const Formula& f, const std::set<std::string>& ap,
                          const EventHistory& hist,
                          std::unordered_map<const void*, Formula>& memo) {
  auto it = memo.find(f.key());
  if (it != memo.end()) return it->second;

  const Event& now = hist.back(0);
  Formula out;
  switch (f.op()) {
    case Op::True: out = Formula::tt(); break;
    case Op::False: out = Formula::ff(); break;
    case Op::Sharp: out = Formula::sharp(); break;
    case Op::Atom:
      if (has_prop(now, f.name())) out = Formula::tt();
      else if (ap.count(f.name())) out = Formula::ff();
      else out = Formula::prev(1, f.name());
      break;
    case Op::Prev:
      if (ap.count(f.name())) {
        out = has_prop(hist.back(f.steps()), f.name()) ? Formula::tt()
                                                       : Formula::ff();
      } else {
        const std::uint32_t grown = f.steps() + 1;
        const std::size_t bound =
            std::min(hist.components(), hist.total());
        if (grown > bound)
          throw internal_error("past obligation exceeded the delay bound");
        out = Formula::prev(grown, f.name());
      }
      break;
    case Op::Not:
      out = Formula::neg(decent_raw(f.lhs(), ap, hist, memo));
      break;
    case Op::And:
      out = Formula::conj(decent_raw(f.lhs(), ap, hist, memo),
                          decent_raw(f.rhs(), ap, hist, memo));
      break;
    case Op::Or:
      out = Formula::disj(decent_raw(f.lhs(), ap, hist, memo),
                          decent_raw(f.rhs(), ap, hist, memo));
      break;
    case Op::Next: out = f.lhs(); break;
    case Op::Until:
      out = Formula::disj(
          decent_raw(f.rhs(), ap, hist, memo),
          Formula::conj(decent_raw(f.lhs(), ap, hist, memo), f));
      break;
    case Op::Finally:
      out = Formula::disj(decent_raw(f.lhs(), ap, hist, memo), f);
      break;
    case Op::Globally:
      out = Formula::conj(decent_raw(f.lhs(), ap, hist, memo), f);
      break;
  }
  memo.emplace(f.key(), out);
  return out;
}

}  // namespace detail

// One decentralised progression step for the component observing `ap`.  The
// current event must already be pushed onto `hist`; the result is simplified.
inline Formula decent_progress(const Formula& f,
                               const std::set<std::string>& ap,
                               const EventHistory& hist) {
  if (hist.total() == 0)
    throw std::invalid_argument(
        "decent_progress needs the current event in the history");
  std::unordered_map<const void*, Formula> memo;
  return simplify(detail::decent_raw(f, ap, hist, memo));
}

// How soon a formula's past obligations must be resolved: the deepest X~
// reachable through the propositional structure.
inline std::uint32_t urgency(const Formula& f) {
  switch (f.op()) {
    case Op::Prev: return f.steps();
    case Op::And:
    case Op::Or: return std::max(urgency(f.lhs()), urgency(f.rhs()));
    default: return 0;
  }
}

// The unresolved past obligations of f: every X~^m p reachable through
// !, & and |.  Deduplicated, in first-traversal order.
inline void sus_into(const Formula& f, std::vector<Formula>& out,
                     std::unordered_set<Formula, FormulaHash>& seen) {
  switch (f.op()) {
    case Op::Prev:
      if (seen.insert(f).second) out.push_back(f);
      return;
    case Op::Not:
      sus_into(f.lhs(), out, seen);
      return;
    case Op::And:
    case Op::Or:
      sus_into(f.lhs(), out, seen);
      sus_into(f.rhs(), out, seen);
      return;
    default: return;
  }
}

inline std::vector<Formula> sus_set(const Formula& f) {
  std::vector<Formula> out;
  std::unordered_set<Formula, FormulaHash> seen;
  sus_into(f, out, seen);
  return out;
}

// The peer a formula mentioning `props` is routed to: the lowest-index
// component other than i observing any of them.
inline std::size_t mon_target(const Architecture& arch, std::size_t i,
                              const std::set<std::string>& props) {
  for (std::size_t j = 0; j < arch.size(); ++j) {
    if (j == i) continue;
    for (const std::string& p : props)
      if (arch.component(j).props.count(p)) return j;
  }
  throw std::invalid_argument(
      "no other component observes any of the routed propositions");
}

struct Message {
  std::size_t from = 0;
  std::size_t to = 0;
  std::size_t round = 0;  // the round whose end it was sent at
  Formula payload;
};

struct LocalMonitorState {
  std::size_t index = 0;
  Formula obligation;
  EventHistory history{1};

  // Rounds completed so far; the next event is number time().
  std::size_t time() const { return history.total(); }
};

inline LocalMonitorState local_init(const Architecture& arch, std::size_t i,
                                    const Formula& spec) {
  if (spec.has_prev() || spec.has_sharp())
    throw std::invalid_argument(
        "the monitored specification must be past-free and sharp-free");
  return LocalMonitorState{i, simplify(spec), EventHistory(arch.size())};
}

struct StepResult {
  LocalMonitorState state;
  Formula progressed;  // the rewrite computed this round, before # replaces it
  Verdict3 verdict = Verdict3::Unknown;
  std::optional<Message> message;
};

// One round of the local algorithm: conjoin the inbox, progress against the
// local event, evaluate, and pick an addressee for the rewritten obligation
// if unresolved past obligations remain.  Among the most urgent of them the
// one routed to the lowest-index peer wins.
inline StepResult monitor_step(const Architecture& arch,
                               const LocalMonitorState& state,
                               const Event& local_event,
                               const std::vector<Formula>& inbox) {
  const std::set<std::string>& ap = arch.component(state.index).props;

  std::vector<Formula> parts{state.obligation};
  for (const Formula& f : inbox)
    if (!f.is(Op::Sharp)) parts.push_back(f);  // # carries no information

  StepResult res;
  res.state = state;
  res.state.history.push(local_event);
  res.progressed = decent_progress(conj_all(parts), ap, res.state.history);
  res.verdict = verdict_of(res.progressed);

  const std::vector<Formula> pending = sus_set(res.progressed);
  // Everything the monitor could resolve locally it must have resolved.
  for (const Formula& ob : pending)
    if (ap.count(ob.name()))
      throw internal_error("locally observable past obligation survived");
  if (!pending.empty()) {
    std::uint32_t top = 0;
    for (const Formula& ob : pending) top = std::max(top, urgency(ob));
    std::size_t target = Architecture::npos;
    for (const Formula& ob : pending) {
      if (urgency(ob) != top) continue;
      target = std::min(target, mon_target(arch, state.index, prop_of(ob)));
    }
    res.message = Message{state.index, target, state.time(), res.progressed};
    res.state.obligation = Formula::sharp();
  } else {
    res.state.obligation = res.progressed;
  }
  return res;
}

}  // namespace ltlmon
