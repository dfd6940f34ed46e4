// Acceptance suite: nine end-to-end claims about the monitoring stack, one
// [PASS]/[FAIL] line each, exit code = number of failures.  Seeds, sample
// counts, tolerances and time budgets are pinned here on purpose — moving
// any of them should be a visible edit to this file, not silent drift.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <ltlmon/bench.hpp>
#include <ltlmon/simulation.hpp>
#include <ltlmon/syntax.hpp>

#include "testutil.hpp"

using namespace ltlmon;

namespace {

struct Criterion {
  bool ok = true;
  std::string note;

  // Keeps the first failure; later ones rarely add information.
  void require(bool cond, const std::string& why) {
    if (!cond && ok) {
      ok = false;
      note = why;
    }
  }
};

// ---------------------------------------------------------------------
// 1. The worked three-component run: every intermediate obligation of
//    F(a & b & c) over the fixed trace must be semantically equal to the
//    hand-computed one, the verdict must come from B in round 3, and
//    exactly seven messages may flow.

Architecture abc_arch() {
  return Architecture({{"A", {"a"}}, {"B", {"b"}}, {"C", {"c"}}});
}

Formula golden_spec() { return parse_formula("F(a & b & c)", {"a", "b", "c"}); }

GlobalTrace golden_trace() {
  const auto ev = [](std::initializer_list<const char*> ps) {
    Event e;
    for (const char* p : ps) e.insert(p);
    return e;
  };
  GlobalTrace t;
  t.steps = {{ev({"a"}), ev({"b"}), ev({})},
             {ev({"a"}), ev({"b"}), ev({"c"})},
             {ev({}), ev({}), ev({})},
             {ev({}), ev({}), ev({})}};
  return t;
}

// Every event over a fixed alphabet, i.e. the power set as a vector.
std::vector<Event> power_events(const std::vector<std::string>& props) {
  std::vector<Event> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << props.size()); ++mask) {
    Event e;
    for (std::size_t i = 0; i < props.size(); ++i)
      if (mask & (std::size_t{1} << i)) e.insert(props[i]);
    out.push_back(std::move(e));
  }
  return out;
}

// An obligation produced in round t talks about instants > t through its
// future part and about already-seen instants through X~^m; the latter are
// decided by the trace, so substituting them leaves a pure future formula
// that eval_lasso can check.
Formula resolve_past(const Formula& f, const std::vector<Event>& merged,
                     std::size_t t) {
  switch (f.op()) {
    case Op::Prev: {
      const std::uint32_t m = f.steps();
      if (m > t + 1) throw internal_error("X~ reaches before the trace start");
      return merged[t + 1 - m].count(f.name()) ? Formula::tt() : Formula::ff();
    }
    case Op::True:
    case Op::False:
    case Op::Sharp:
    case Op::Atom:
      return f;
    case Op::Not:
      return Formula::neg(resolve_past(f.lhs(), merged, t));
    case Op::Next:
      return Formula::next(resolve_past(f.lhs(), merged, t));
    case Op::Finally:
      return Formula::eventually(resolve_past(f.lhs(), merged, t));
    case Op::Globally:
      return Formula::always(resolve_past(f.lhs(), merged, t));
    case Op::And:
      return Formula::conj(resolve_past(f.lhs(), merged, t),
                           resolve_past(f.rhs(), merged, t));
    case Op::Or:
      return Formula::disj(resolve_past(f.lhs(), merged, t),
                           resolve_past(f.rhs(), merged, t));
    case Op::Until:
      return Formula::until(resolve_past(f.lhs(), merged, t),
                            resolve_past(f.rhs(), merged, t));
  }
  throw internal_error("unhandled operator");
}

// Exhaustive over every lasso with prefix length <= 2 and loop length <= 2
// built from the eight events over {a, b, c}: 5256 words per comparison.
bool equiv_enumerated(const Formula& a, const Formula& b) {
  if (a == b) return true;
  static const std::vector<Event> evs = power_events({"a", "b", "c"});
  const std::size_t n = evs.size();
  for (std::size_t plen = 0; plen <= 2; ++plen) {
    std::size_t pwords = 1;
    for (std::size_t k = 0; k < plen; ++k) pwords *= n;
    for (std::size_t llen = 1; llen <= 2; ++llen) {
      std::size_t lwords = 1;
      for (std::size_t k = 0; k < llen; ++k) lwords *= n;
      for (std::size_t pi = 0; pi < pwords; ++pi) {
        for (std::size_t li = 0; li < lwords; ++li) {
          LassoWord w;
          for (std::size_t k = 0, rest = pi; k < plen; ++k, rest /= n)
            w.prefix.push_back(evs[rest % n]);
          for (std::size_t k = 0, rest = li; k < llen; ++k, rest /= n)
            w.loop.push_back(evs[rest % n]);
          if (eval_lasso(a, w) != eval_lasso(b, w)) return false;
        }
      }
    }
  }
  return true;
}

Criterion golden_table() {
  Criterion c;
  const Architecture arch = abc_arch();
  const Formula phi = golden_spec();
  const GlobalTrace trace = golden_trace();
  std::vector<Event> merged;
  for (const auto& locals : trace.steps) merged.push_back(merge_locals(locals));

  const auto P = [](std::uint32_t m, const char* p) {
    return Formula::prev(m, p);
  };
  const Formula sharp = Formula::sharp();
  // The hand-computed table, one row per round, one column per component.
  const std::vector<std::vector<Formula>> table = {
      {Formula::disj(Formula::conj(P(1, "b"), P(1, "c")), phi),
       Formula::disj(Formula::conj(P(1, "a"), P(1, "c")), phi), phi},
      {Formula::disj(P(2, "c"),
                     Formula::disj(Formula::conj(P(1, "b"), P(1, "c")), phi)),
       Formula::disj(P(2, "c"),
                     Formula::disj(Formula::conj(P(1, "a"), P(1, "c")), phi)),
       Formula::disj(Formula::conj(P(1, "a"), P(1, "b")), phi)},
      {Formula::disj(P(2, "b"), phi), sharp,
       Formula::conj(Formula::disj(P(2, "b"), phi),
                     Formula::disj(P(2, "a"), phi))},
      {Formula::disj(P(3, "b"), phi), Formula::tt(), sharp}};

  DecentralisedRun run(arch, phi);
  for (std::size_t t = 0; t < table.size(); ++t) {
    run.step(trace.steps[t]);
    for (std::size_t i = 0; i < arch.size(); ++i) {
      const Formula& actual = run.progressed()[i];
      const Formula& expected = table[t][i];
      const std::string where = "round " + std::to_string(t) + ", " +
                                arch.components()[i].name;
      if (expected.is(Op::Sharp)) {
        c.require(actual == sharp, where + ": expected a handed-off slot");
        continue;
      }
      c.require(!actual.has_sharp(), where + ": unexpected #");
      if (!actual.has_sharp())
        c.require(equiv_enumerated(resolve_past(actual, merged, t),
                                   resolve_past(expected, merged, t)),
                  where + ": obligation differs, got " +
                      print_formula(actual));
    }
  }

  const RunResult r = run.result();
  c.require(r.verdict == Verdict3::Top, "verdict is not TOP");
  c.require(r.time == 3u, "verdict round is not 3");
  c.require(r.reporter == 1u, "reporter is not B");
  c.require(r.messages == 7u,
            "message count is " + std::to_string(r.messages) + ", not 7");
  return c;
}

// ---------------------------------------------------------------------
// 2./3. Random-run contract: a local verdict never contradicts or precedes
// the reference verdict (soundness), and whenever the reference concludes
// at t the local monitors conclude within [t, t+n] under empty padding
// (completeness).  compare_run enforces both internally; any throw counts.

struct ContractStats {
  std::size_t runs = 0;
  std::size_t conclusive = 0;
  std::size_t violations = 0;
  std::size_t max_window = 0;  // largest observed td - tc
};

ContractStats contract_suite(std::uint64_t seed, std::size_t runs) {
  static const std::vector<std::string> pool{"a", "b", "c", "d", "e"};
  ContractStats st;
  for (std::size_t r = 0; r < runs; ++r) {
    Rng rng(mix_seed(seed, r));
    const std::size_t n = 2 + rng.below(3);
    const std::size_t m = n + rng.below(pool.size() - n + 1);
    const std::vector<std::string> props(pool.begin(),
                                         pool.begin() +
                                             static_cast<std::ptrdiff_t>(m));
    const Architecture arch = split_architecture(props, n);
    const Formula f = gen_random_formula(rng, props, 1 + rng.below(6));
    GlobalTrace tr;
    const std::size_t len = 1 + rng.below(30);
    for (std::size_t k = 0; k < len; ++k)
      tr.steps.push_back(gen_event(rng, arch, 0.5));

    ++st.runs;
    try {
      const CompareResult cr = compare_run(arch, f, tr);
      if (cr.central.verdict != Verdict3::Unknown) {
        ++st.conclusive;
        const std::size_t w = *cr.decentralised.time - *cr.central.time;
        if (w > st.max_window) st.max_window = w;
      }
    } catch (const internal_error&) {
      ++st.violations;
    }
  }
  return st;
}

// ---------------------------------------------------------------------
// 4. The delay bound m <= min(n, t+1) is asserted inside every progression
// of a past obligation; the suites above must never fire it, and a
// five-component system where everyone chases everyone else's proposition
// must actually reach m = n, showing the bound is tight.

Criterion max_delay_stress(const ContractStats& a, const ContractStats& b) {
  Criterion c;
  c.require(a.violations == 0 && b.violations == 0,
            "delay-bound assertion fired during the random suites");

  const std::vector<std::string> props{"p1", "p2", "p3", "p4", "p5"};
  const Architecture arch = split_architecture(props, 5);
  std::vector<Formula> atoms;
  for (const std::string& p : props) atoms.push_back(Formula::atom(p));
  const Formula spec = Formula::eventually(conj_all(atoms));

  GlobalTrace tr;
  std::vector<Event> joint;
  for (const std::string& p : props) joint.push_back(Event{p});
  tr.steps.push_back(joint);
  for (int k = 0; k < 12; ++k) tr.steps.emplace_back(5);

  const RunResult r = run_decentralised(arch, spec, tr);
  c.require(r.verdict == Verdict3::Top, "stress run did not conclude TOP");
  c.require(r.max_delay == arch.size(),
            "deepest X~ was " + std::to_string(r.max_delay) + ", expected " +
                std::to_string(arch.size()));
  return c;
}

// ---------------------------------------------------------------------
// 5. Progression oracle: progressing by one event and evaluating the rest
// equals evaluating the whole word.

Criterion progression_oracle() {
  Criterion c;
  constexpr int kTriples = 50000;
  testutil::Rand r(51505150);
  int bad = 0;
  for (int i = 0; i < kTriples; ++i) {
    const Formula f = testutil::gen_formula(r, testutil::abc(), 3);
    const Event sigma = testutil::gen_event(r, testutil::abc());
    LassoWord rest = testutil::gen_lasso(r, testutil::abc(), 4, 4);
    LassoWord whole = rest;
    whole.prefix.insert(whole.prefix.begin(), sigma);
    if (eval_lasso(f, whole) != eval_lasso(progress_event(f, sigma), rest))
      ++bad;
  }
  c.require(bad == 0, std::to_string(bad) + " of " + std::to_string(kTriples) +
                          " triples disagree");
  return c;
}

// ---------------------------------------------------------------------
// 6. A single-component system degenerates to the centralised monitor:
// same verdict, same round, no messages.

Criterion single_component() {
  Criterion c;
  constexpr std::size_t kRuns = 5000;
  const Architecture arch = split_architecture({"a", "b", "c"}, 1);
  for (std::size_t r = 0; r < kRuns && c.ok; ++r) {
    Rng rng(mix_seed(600, r));
    const Formula f =
        gen_random_formula(rng, {"a", "b", "c"}, 1 + rng.below(6));
    GlobalTrace tr;
    const std::size_t len = 1 + rng.below(20);
    for (std::size_t k = 0; k < len; ++k)
      tr.steps.push_back(gen_event(rng, arch, 0.5));
    try {
      const CompareResult cr = compare_run(arch, f, tr);
      c.require(cr.decentralised.messages == 0, "messages were exchanged");
      c.require(cr.decentralised.verdict == cr.central.verdict,
                "verdicts differ");
      if (cr.central.verdict != Verdict3::Unknown)
        c.require(*cr.decentralised.time == *cr.central.time,
                  "verdict rounds differ");
    } catch (const internal_error& e) {
      c.require(false, std::string("assertion fired: ") + e.what());
    }
  }
  return c;
}

// ---------------------------------------------------------------------
// 7. Benchmark trends with the shipped defaults (three single-proposition
// components, 1000 runs per label, fixed seed): message savings for random
// formulas, a trace overhead that shrinks as formulas grow, and both
// ratios close to the centralised baseline for all nine patterns.

Criterion benchmark_trends() {
  Criterion c;
  constexpr double kTrendSlack = 0.01;  // absorbs sampling noise between sizes

  BenchSettings s;
  s.seed = 42;
  s.runs = 1000;
  s.prob = 0.5;
  s.cap = 10000;
  const std::vector<BenchRow> rand = bench_random(s, {1, 2, 3, 4, 5, 6});
  for (const BenchRow& row : rand) {
    c.require(row.ratio_msg() > 0.0 && row.ratio_msg() < 0.6,
              "size " + row.label + " msg ratio " +
                  std::to_string(row.ratio_msg()) + " outside (0, 0.6)");
    c.require(row.ratio_trace() >= 1.0 && row.ratio_trace() <= 1.3,
              "size " + row.label + " trace ratio " +
                  std::to_string(row.ratio_trace()) + " outside [1.0, 1.3]");
  }
  for (std::size_t i = 0; i + 1 < rand.size(); ++i)
    c.require(rand[i + 1].ratio_trace() <= rand[i].ratio_trace() + kTrendSlack,
              "trace ratio rises from size " + rand[i].label + " to " +
                  rand[i + 1].label);

  BenchSettings p = s;
  p.prob = 0.01;  // sparse systems, the regime the patterns are written for
  const std::vector<BenchRow> pats = bench_patterns(p, pattern_kinds());
  for (const BenchRow& row : pats) {
    c.require(row.ratio_msg() < 0.3, row.label + " msg ratio " +
                                         std::to_string(row.ratio_msg()) +
                                         " not below 0.3");
    c.require(row.ratio_trace() < 1.02, row.label + " trace ratio " +
                                            std::to_string(row.ratio_trace()) +
                                            " not below 1.02");
  }
  return c;
}

// ---------------------------------------------------------------------
// 8. Closed forms of progression over a whole trace, as sampled semantic
// equivalences (suffix notation: u^i drops the first i events of u).

Criterion trace_identities() {
  Criterion c;
  constexpr int kInstances = 5000;
  testutil::Rand r(88008800);
  for (int i = 0; i < kInstances && c.ok; ++i) {
    const Formula f = testutil::gen_formula(r, testutil::abc(), 2);
    const Formula g = testutil::gen_formula(r, testutil::abc(), 2);
    std::vector<Event> u;
    const std::size_t len = 1 + r.below(5);
    for (std::size_t k = 0; k < len; ++k)
      u.push_back(testutil::gen_event(r, testutil::abc()));

    std::vector<Formula> fs, gs;  // P(f, u^i), P(g, u^i)
    for (std::size_t k = 0; k < len; ++k) {
      fs.push_back(
          progress_trace(f, std::vector<Event>(u.begin() + k, u.end())));
      gs.push_back(
          progress_trace(g, std::vector<Event>(u.begin() + k, u.end())));
    }

    const Formula lhs_g = progress_trace(Formula::always(f), u);
    const Formula rhs_g = Formula::conj(conj_all(fs), Formula::always(f));
    const Formula lhs_f = progress_trace(Formula::eventually(f), u);
    const Formula rhs_f = Formula::disj(disj_all(fs), Formula::eventually(f));

    const Formula lhs_u = progress_trace(Formula::until(f, g), u);
    std::vector<Formula> witnesses;
    for (std::size_t k = 0; k < len; ++k) {
      std::vector<Formula> upto(fs.begin(),
                                fs.begin() + static_cast<std::ptrdiff_t>(k));
      witnesses.push_back(Formula::conj(gs[k], conj_all(upto)));
    }
    const Formula rhs_u = Formula::disj(
        disj_all(witnesses), Formula::conj(conj_all(fs), Formula::until(f, g)));

    testutil::Rand words(770000 + i);
    c.require(testutil::equiv_sampled(lhs_g, rhs_g, words, testutil::abc()),
              "G identity fails for " + print_formula(f));
    c.require(testutil::equiv_sampled(lhs_f, rhs_f, words, testutil::abc()),
              "F identity fails for " + print_formula(f));
    c.require(testutil::equiv_sampled(lhs_u, rhs_u, words, testutil::abc()),
              "U identity fails for " + print_formula(f) + " U " +
                  print_formula(g));
  }
  return c;
}

// ---------------------------------------------------------------------
// 9. Bit-for-bit benchmark determinism, including across thread counts.

Criterion determinism() {
  Criterion c;
  BenchSettings q;
  q.seed = 7;
  q.runs = 40;
  q.prob = 0.5;
  q.cap = 2000;

  const std::string r1 = csv_report(bench_random(q, {1, 2, 3}));
  c.require(r1 == csv_report(bench_random(q, {1, 2, 3})),
            "bench-random differs between invocations");
  BenchSettings qj = q;
  qj.jobs = 3;
  c.require(r1 == csv_report(bench_random(qj, {1, 2, 3})),
            "bench-random differs across thread counts");

  BenchSettings qp = q;
  qp.prob = 0.01;
  qp.runs = 20;
  const std::vector<std::string> kinds{"absence", "precedence"};
  c.require(csv_report(bench_patterns(qp, kinds)) ==
                csv_report(bench_patterns(qp, kinds)),
            "bench-pattern differs between invocations");
  c.require(csv_report(bench_architectures(qp, {2, 3})) ==
                csv_report(bench_architectures(qp, {2, 3})),
            "bench-arch differs between invocations");
  return c;
}

}  // namespace

int main() {
  ContractStats soundness_stats;
  ContractStats completeness_stats;

  struct Entry {
    int number;
    const char* name;
    double time_budget;  // seconds; 0 = unlimited
    std::function<Criterion()> run;
  };
  const std::vector<Entry> entries = {
      {1, "golden three-component run", 1.0, golden_table},
      {2, "soundness over random runs", 60.0,
       [&] {
         soundness_stats = contract_suite(2222, 10000);
         Criterion c;
         c.require(soundness_stats.violations == 0,
                   std::to_string(soundness_stats.violations) +
                       " contract violations");
         return c;
       }},
      {3, "verdict delay window", 0.0,
       [&] {
         completeness_stats = contract_suite(3333, 10000);
         Criterion c;
         c.require(completeness_stats.violations == 0,
                   std::to_string(completeness_stats.violations) +
                       " contract violations");
         c.require(completeness_stats.conclusive >= 2500,
                   "only " + std::to_string(completeness_stats.conclusive) +
                       " conclusive runs; suite lost its teeth");
         return c;
       }},
      {4, "tight max-delay bound", 0.0,
       [&] { return max_delay_stress(soundness_stats, completeness_stats); }},
      {5, "progression oracle", 0.0, progression_oracle},
      {6, "single-component reduction", 0.0, single_component},
      {7, "benchmark trends", 300.0, benchmark_trends},
      {8, "trace progression identities", 0.0, trace_identities},
      {9, "benchmark determinism", 0.0, determinism},
  };

  int failed = 0;
  for (const Entry& e : entries) {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c;
    try {
      c = e.run();
    } catch (const std::exception& ex) {
      c.ok = false;
      c.note = std::string("unexpected exception: ") + ex.what();
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (e.time_budget > 0.0 && dt > e.time_budget && c.ok) {
      c.ok = false;
      c.note = "over the " + std::to_string(e.time_budget) + " s budget";
    }
    std::printf("[%s] %d %s (%.2f s)%s%s\n", c.ok ? "PASS" : "FAIL", e.number,
                e.name, dt, c.note.empty() ? "" : " — ", c.note.c_str());
    std::fflush(stdout);
    if (!c.ok) ++failed;
  }
  if (failed == 0) {
    std::printf("all 9 criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", failed);
  return failed;
}
