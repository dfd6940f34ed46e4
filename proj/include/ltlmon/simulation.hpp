#pragma once

// Whole-run orchestration.  The decentralised run drives all local monitors
// in lockstep rounds: messages sent at the end of round t are read at the
// start of round t+1, and the run halts at the first conclusive verdict
// (lowest component index wins a tie within a round).  Monitors still
// progress in the verdict round — their rewrites are observable — but the
// round's outgoing messages are neither delivered nor counted, because the
// run is over before communication happens.
//
// The centralised reference run progresses the specification against the
// merged global event; its message count charges every component with one
// observation message per round.

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <stdexcept>
#include <vector>

#include "architecture.hpp"
#include "decentral.hpp"
#include "formula.hpp"
#include "lasso.hpp"
#include "progression.hpp"

namespace ltlmon {

// Per-round local events: steps[t][i] is what component i observes at t.
struct GlobalTrace {
  std::vector<std::vector<Event>> steps;

  std::size_t size() const { return steps.size(); }
};

// Union of the components' observations at one instant.
inline Event merge_locals(const std::vector<Event>& locals) {
  Event out;
  for (const Event& e : locals) out.insert(e.begin(), e.end());
  return out;
}

struct RunResult {
  Verdict3 verdict = Verdict3::Unknown;
  std::optional<std::size_t> time;      // round of the verdict
  std::optional<std::size_t> reporter;  // component that raised it
  std::size_t steps = 0;                // rounds executed / events consumed
  std::size_t messages = 0;
  std::size_t message_nodes = 0;  // total formula size shipped (secondary)
  std::size_t max_delay = 0;      // deepest X~ that ever appeared
};

class DecentralisedRun {
 public:
  DecentralisedRun(Architecture arch, const Formula& spec)
      : arch_(std::move(arch)), inboxes_(arch_.size()) {
    for (std::size_t i = 0; i < arch_.size(); ++i) {
      states_.push_back(local_init(arch_, i, spec));
      progressed_.push_back(states_.back().obligation);
    }
  }

  bool done() const { return verdict_ != Verdict3::Unknown; }

  // One lockstep round; locals[i] is component i's observation.
  Verdict3 step(const std::vector<Event>& locals) {
    if (done()) throw internal_error("stepping a finished run");
    if (locals.size() != arch_.size())
      throw std::invalid_argument("event width does not match architecture");

    std::vector<StepResult> results;
    results.reserve(arch_.size());
    for (std::size_t i = 0; i < arch_.size(); ++i) {
      results.push_back(
          monitor_step(arch_, states_[i], locals[i], inboxes_[i]));
      inboxes_[i].clear();
    }

    for (std::size_t i = 0; i < arch_.size(); ++i) {
      progressed_[i] = results[i].progressed;
      max_delay_ =
          std::max<std::size_t>(max_delay_, results[i].progressed.prev_depth());
      states_[i] = std::move(results[i].state);
    }
    ++rounds_;

    for (std::size_t i = 0; i < arch_.size(); ++i) {
      if (results[i].verdict != Verdict3::Unknown) {
        verdict_ = results[i].verdict;
        verdict_time_ = rounds_ - 1;
        reporter_ = i;
        return verdict_;  // round messages are dropped: the run is over
      }
    }

    for (const StepResult& r : results) {
      if (!r.message) continue;
      inboxes_[r.message->to].push_back(r.message->payload);
      ++messages_;
      message_nodes_ += r.message->payload.node_count();
    }
    return Verdict3::Unknown;
  }

  Verdict3 verdict() const { return verdict_; }
  std::size_t rounds() const { return rounds_; }
  std::size_t messages() const { return messages_; }

  // The formulas the monitors computed in the latest round, before any of
  // them was handed off and replaced by #.
  const std::vector<Formula>& progressed() const { return progressed_; }
  const std::vector<LocalMonitorState>& states() const { return states_; }

  RunResult result() const {
    RunResult r;
    r.verdict = verdict_;
    r.time = verdict_time_;
    r.reporter = reporter_;
    r.steps = rounds_;
    r.messages = messages_;
    r.message_nodes = message_nodes_;
    r.max_delay = max_delay_;
    return r;
  }

 private:
  Architecture arch_;
  std::vector<LocalMonitorState> states_;
  std::vector<std::vector<Formula>> inboxes_;
  std::vector<Formula> progressed_;
  std::size_t rounds_ = 0;
  std::size_t messages_ = 0;
  std::size_t message_nodes_ = 0;
  std::size_t max_delay_ = 0;
  Verdict3 verdict_ = Verdict3::Unknown;
  std::optional<std::size_t> verdict_time_;
  std::optional<std::size_t> reporter_;
};

class CentralisedRun {
 public:
  CentralisedRun(const Architecture& arch, const Formula& spec)
      : components_(arch.size()), monitor_(central_init(spec)) {}

  bool done() const { return monitor_.verdict != Verdict3::Unknown; }

  Verdict3 step(const Event& global_event) {
    if (done()) throw internal_error("stepping a finished run");
    // Progression is pure, and a long-running obligation cycles through a
    // small recurring family of rewrites, so remembering each transition
    // makes runs that stay inconclusive for thousands of rounds cheap.
    const StepKey key{monitor_.obligation, global_event};
    auto it = transitions_.find(key);
    if (it == transitions_.end()) {
      const Formula next = progress_event(monitor_.obligation, global_event);
      if (transitions_.size() >= kMaxCached) {
        monitor_.obligation = next;
        ++monitor_.steps;
        monitor_.verdict = verdict_of(next);
        return monitor_.verdict;
      }
      it = transitions_.emplace(key, next).first;
    }
    monitor_.obligation = it->second;
    ++monitor_.steps;
    monitor_.verdict = verdict_of(monitor_.obligation);
    return monitor_.verdict;
  }

  const Formula& obligation() const { return monitor_.obligation; }

  RunResult result() const {
    RunResult r;
    r.verdict = monitor_.verdict;
    if (r.verdict != Verdict3::Unknown) r.time = monitor_.steps - 1;
    r.steps = monitor_.steps;
    r.messages = monitor_.steps * components_;  // one observation each round
    return r;
  }

 private:
  struct StepKey {
    Formula obligation;
    Event event;
    friend bool operator==(const StepKey&, const StepKey&) = default;
  };
  struct StepKeyHash {
    std::size_t operator()(const StepKey& k) const {
      std::size_t h = k.obligation.hash();
      for (const std::string& p : k.event)
        h = h * 0x100000001b3ull ^ std::hash<std::string>{}(p);
      return h;
    }
  };
  static constexpr std::size_t kMaxCached = 1 << 16;

  std::size_t components_;
  CentralMonitor monitor_;
  std::unordered_map<StepKey, Formula, StepKeyHash> transitions_;
};

// Runs the local monitors over the trace; after it ends, components observe
// empty events for up to extension_cap further rounds so delayed verdicts
// can surface.
inline RunResult run_decentralised(const Architecture& arch,
                                   const Formula& spec,
                                   const GlobalTrace& trace,
                                   std::size_t extension_cap = 0) {
  DecentralisedRun run(arch, spec);
  for (const std::vector<Event>& locals : trace.steps) {
    if (run.done()) break;
    run.step(locals);
  }
  const std::vector<Event> empty_round(arch.size());
  for (std::size_t k = 0; k < extension_cap && !run.done(); ++k)
    run.step(empty_round);
  return run.result();
}

inline RunResult run_centralised(const Architecture& arch, const Formula& spec,
                                 const GlobalTrace& trace) {
  CentralisedRun run(arch, spec);
  for (const std::vector<Event>& locals : trace.steps) {
    if (run.done()) break;
    run.step(merge_locals(locals));
  }
  return run.result();
}

struct CompareResult {
  RunResult central;
  RunResult decentralised;
};

// Both monitoring modes over identical observations.  When the centralised
// run concludes at t, the decentralised one is allowed the delay window of
// up to one empty round per component beyond the trace; it must then agree
// within that window — both facts are enforced here, not just reported.
inline CompareResult compare_run(const Architecture& arch, const Formula& spec,
                                 const GlobalTrace& trace) {
  CompareResult out;
  out.central = run_centralised(arch, spec, trace);

  const bool conclusive = out.central.verdict != Verdict3::Unknown;
  out.decentralised =
      run_decentralised(arch, spec, trace, conclusive ? arch.size() : 0);

  if (conclusive) {
    if (out.decentralised.verdict != out.central.verdict)
      throw internal_error("decentralised verdict disagrees");
    const std::size_t tc = *out.central.time;
    const std::size_t td = *out.decentralised.time;
    if (td < tc || td > tc + arch.size())
      throw internal_error("decentralised verdict outside the delay window");
  } else if (out.decentralised.verdict != Verdict3::Unknown) {
    throw internal_error(
        "decentralised verdict without a centralised counterpart");
  }
  return out;
}

}  // namespace ltlmon
