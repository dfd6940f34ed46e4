#pragma once

// Deterministic random generation for the benchmarks and the CLI: formulas
// of an exact temporal size, event traces of a given density, pattern
// instantiations, and evenly split architectures.
//
// All draws go through Rng, which wraps std::mt19937_64 but hand-rolls the
// ranged draws: the standard distributions are implementation-defined, and
// benchmark output must be byte-identical across toolchains for the same
// seed.  The draw order inside each generator is part of that contract.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "architecture.hpp"
#include "formula.hpp"
#include "patterns.hpp"
#include "simulation.hpp"

namespace ltlmon {

// SplitMix64; mixes seeds and derives independent per-run streams.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform draw from [0, n) without modulo bias.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("empty draw range");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    // 53 uniform bits give an exact dyadic comparison.
    const double u =
        static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0);
    return u < p;
  }

 private:
  std::mt19937_64 engine_;
};

namespace detail {

inline Formula gen_state_formula(Rng& rng,
                                 const std::vector<std::string>& props) {
  const auto pick = [&]() {
    return Formula::atom(props[rng.below(props.size())]);
  };
  switch (rng.below(6)) {
    case 0:
      return Formula::neg(pick());
    case 1:
      return Formula::conj(pick(), Formula::conj(pick(), pick()));
    case 2:
      return Formula::conj(pick(), pick());
    case 3:
      return Formula::disj(pick(), pick());
    default:
      return pick();
  }
}

inline Formula gen_sized(Rng& rng, const std::vector<std::string>& props,
                         std::size_t budget) {
  if (budget == 0) return gen_state_formula(rng, props);
  // Weighted connective choice; every temporal operator costs one unit of
  // the budget and the binary ones split what is left.  The weights lean
  // heavily on X and keep the boolean splits rare, so extra budget mostly
  // deepens the formula instead of widening it: verdict latency then grows
  // with the size label, while a wide conjunction or disjunction would
  // conclude as soon as its fastest branch does.
  const std::uint64_t pick = rng.below(24);
  if (pick < 16) return Formula::next(gen_sized(rng, props, budget - 1));
  if (pick < 18) return Formula::eventually(gen_sized(rng, props, budget - 1));
  if (pick < 20) return Formula::always(gen_sized(rng, props, budget - 1));
  if (pick < 22) {
    const std::size_t left = rng.below(budget);
    return Formula::until(gen_sized(rng, props, left),
                          gen_sized(rng, props, budget - 1 - left));
  }
  const std::size_t left = 1 + rng.below(budget);
  if (pick == 22)
    return Formula::conj(gen_sized(rng, props, left - 1),
                         gen_sized(rng, props, budget - left + 1));
  return Formula::disj(gen_sized(rng, props, left - 1),
                       gen_sized(rng, props, budget - left + 1));
}

}  // namespace detail

// A random future formula with exactly `size` temporal connectives.
inline Formula gen_random_formula(Rng& rng,
                                  const std::vector<std::string>& props,
                                  std::size_t size) {
  if (props.empty())
    throw std::invalid_argument("formula generation needs propositions");
  const Formula f = detail::gen_sized(rng, props, size);
  if (temporal_size(f) != size)
    throw internal_error("generated formula missed its temporal size");
  return f;
}

// A random instantiation of `kind`: uniform scope, placeholders bound to
// distinct propositions when there are enough, uniformly with replacement
// otherwise.
inline Formula gen_pattern_formula(Rng& rng, const std::string& kind,
                                   const std::vector<std::string>& props) {
  if (props.empty())
    throw std::invalid_argument("pattern instantiation needs propositions");
  const std::vector<PatternTemplate> variants = patterns_of_kind(kind);
  const PatternTemplate& tmpl = variants[rng.below(variants.size())];
  const Formula skeleton = parse_pattern(tmpl);

  const std::set<std::string> holes = prop_of(skeleton);
  std::map<std::string, std::string> binding;
  if (holes.size() <= props.size()) {
    std::vector<std::string> pool = props;
    for (const std::string& h : holes) {
      const std::size_t k = rng.below(pool.size());
      binding[h] = pool[k];
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
    }
  } else {
    for (const std::string& h : holes)
      binding[h] = props[rng.below(props.size())];
  }
  return rename_props(skeleton, binding);
}

// One trace step: each component observes each of its propositions
// independently with probability `prob`.  Draw order follows architecture
// order, then the component's own (sorted) proposition order.
inline std::vector<Event> gen_event(Rng& rng, const Architecture& arch,
                                    double prob) {
  std::vector<Event> locals(arch.size());
  for (std::size_t i = 0; i < arch.size(); ++i)
    for (const std::string& p : arch.component(i).props)
      if (rng.bernoulli(prob)) locals[i].insert(p);
  return locals;
}

inline GlobalTrace gen_trace(Rng& rng, const Architecture& arch,
                             std::size_t length, double prob) {
  GlobalTrace t;
  t.steps.reserve(length);
  for (std::size_t k = 0; k < length; ++k)
    t.steps.push_back(gen_event(rng, arch, prob));
  return t;
}

// Deals `props` round-robin onto `n` components named "A", "B", ...
inline Architecture split_architecture(const std::vector<std::string>& props,
                                       std::size_t n) {
  if (n == 0 || n > props.size())
    throw std::invalid_argument(
        "component count must be in [1, #propositions]");
  if (n > 26) throw std::invalid_argument("too many components to name");
  std::vector<Architecture::Component> comps(n);
  for (std::size_t i = 0; i < n; ++i)
    comps[i].name = std::string(1, static_cast<char>('A' + i));
  for (std::size_t k = 0; k < props.size(); ++k)
    comps[k % n].props.insert(props[k]);
  return Architecture(std::move(comps));
}

}  // namespace ltlmon
