// The pattern catalogue and the random generators.  The catalogue tests pin
// the shape of every template (parsable, future-only, printable round-trip);
// the generator tests pin determinism and the exact-size contract the
// benchmarks rely on.

#include <gtest/gtest.h>

#include <map>
#include <set>
#include <string>

#include <ltlmon/generators.hpp>
#include <ltlmon/patterns.hpp>
#include <ltlmon/syntax.hpp>

using namespace ltlmon;

namespace {

TEST(PatternCatalogue, NineKindsTimesFiveScopes) {
  ASSERT_EQ(pattern_kinds().size(), 9u);
  ASSERT_EQ(pattern_scopes().size(), 5u);
  ASSERT_EQ(pattern_catalogue().size(), 45u);
  for (const std::string& kind : pattern_kinds()) {
    const std::vector<PatternTemplate> variants = patterns_of_kind(kind);
    ASSERT_EQ(variants.size(), 5u) << kind;
    for (std::size_t i = 0; i < 5; ++i)
      EXPECT_EQ(variants[i].scope, pattern_scopes()[i]) << kind;
  }
  EXPECT_THROW(patterns_of_kind("nonesuch"), std::invalid_argument);
}

TEST(PatternCatalogue, EveryTemplateParsesCleanly) {
  for (const PatternTemplate& t : pattern_catalogue()) {
    const Formula f = parse_pattern(t);
    EXPECT_FALSE(f.has_prev()) << t.kind << "/" << t.scope;
    EXPECT_FALSE(f.has_sharp()) << t.kind << "/" << t.scope;
    EXPECT_GT(temporal_size(f), 0u) << t.kind << "/" << t.scope;
    // The printed form must mean the same thing as the template text.
    EXPECT_EQ(parse_formula(print_formula(f), placeholder_alphabet()), f)
        << t.kind << "/" << t.scope;
  }
}

TEST(PatternCatalogue, SpotChecksAgainstHandBuiltTrees) {
  const Formula p = Formula::atom("p");
  const Formula s = Formula::atom("s");
  EXPECT_EQ(parse_pattern(patterns_of_kind("absence")[0]),
            Formula::always(Formula::neg(p)));
  EXPECT_EQ(parse_pattern(patterns_of_kind("existence")[0]),
            Formula::eventually(p));
  EXPECT_EQ(parse_pattern(patterns_of_kind("universality")[0]),
            Formula::always(p));
  // G(p -> F(s)) with the implication desugared at parse time.
  EXPECT_EQ(parse_pattern(patterns_of_kind("response")[0]),
            Formula::always(
                Formula::disj(Formula::neg(p), Formula::eventually(s))));
  // (!p) U s | G(!p): the weak-until expansion.
  EXPECT_EQ(parse_pattern(patterns_of_kind("precedence")[0]),
            Formula::disj(Formula::until(Formula::neg(p), s),
                          Formula::always(Formula::neg(p))));
}

TEST(RenameProps, SubstitutesAtomsAndObligations) {
  const std::set<std::string> ab{"a", "b", "p", "q"};
  const Formula f = parse_formula("G(p -> F(q))", ab);
  const Formula g = parse_formula("G(a -> F(b))", ab);
  EXPECT_EQ(rename_props(f, {{"p", "a"}, {"q", "b"}}), g);
  EXPECT_EQ(rename_props(f, {}), f);
  // Collapsing two placeholders onto one proposition is allowed.
  EXPECT_EQ(rename_props(f, {{"p", "a"}, {"q", "a"}}),
            parse_formula("G(a -> F(a))", ab));
  EXPECT_EQ(rename_props(Formula::prev(2, "p"), {{"p", "a"}}),
            Formula::prev(2, "a"));
}

TEST(RngTest, DeterministicAndInRange) {
  Rng r1(42), r2(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(r1.next(), r2.next());
  Rng r(7);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(r.below(13), 13u);
  EXPECT_THROW(r.below(0), std::invalid_argument);
  EXPECT_FALSE(r.bernoulli(0.0));
  EXPECT_TRUE(r.bernoulli(1.0));
  int heads = 0;
  for (int i = 0; i < 10000; ++i) heads += r.bernoulli(0.3);
  EXPECT_GT(heads, 2700);
  EXPECT_LT(heads, 3300);
}

TEST(MixSeed, SpreadsInputs) {
  EXPECT_EQ(mix_seed(1, 2), mix_seed(1, 2));
  EXPECT_NE(mix_seed(1, 2), mix_seed(2, 1));
  EXPECT_NE(mix_seed(0, 0), mix_seed(0, 1));
}

TEST(GenRandomFormula, HitsTheRequestedTemporalSizeExactly) {
  const std::vector<std::string> props{"a", "b", "c"};
  for (std::size_t size = 0; size <= 6; ++size) {
    Rng rng(mix_seed(0xf0f0, size));
    for (int i = 0; i < 200; ++i) {
      const Formula f = gen_random_formula(rng, props, size);
      EXPECT_EQ(temporal_size(f), size);
      EXPECT_FALSE(f.has_prev());
      EXPECT_FALSE(f.has_sharp());
      for (const std::string& a : prop_of(f))
        EXPECT_TRUE(a == "a" || a == "b" || a == "c");
    }
  }
  Rng rng(1);
  EXPECT_THROW(gen_random_formula(rng, {}, 2), std::invalid_argument);
}

TEST(GenRandomFormula, SameSeedSameFormula) {
  const std::vector<std::string> props{"a", "b", "c"};
  Rng r1(99), r2(99);
  for (int i = 0; i < 50; ++i)
    EXPECT_EQ(gen_random_formula(r1, props, 4),
              gen_random_formula(r2, props, 4));
}

TEST(GenPatternFormula, InstantiatesEveryKind) {
  const std::vector<std::string> props{"a", "b", "c"};
  for (const std::string& kind : pattern_kinds()) {
    Rng rng(mix_seed(0xbeef, std::hash<std::string>{}(kind)));
    for (int i = 0; i < 40; ++i) {
      const Formula f = gen_pattern_formula(rng, kind, props);
      EXPECT_FALSE(f.has_prev());
      for (const std::string& a : prop_of(f))
        EXPECT_TRUE(a == "a" || a == "b" || a == "c") << kind;
    }
  }
  Rng rng(5);
  EXPECT_THROW(gen_pattern_formula(rng, "nonesuch", props),
               std::invalid_argument);
  EXPECT_THROW(gen_pattern_formula(rng, "absence", {}),
               std::invalid_argument);
}

TEST(GenPatternFormula, SinglePropositionCollapsesAllPlaceholders) {
  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    const Formula f = gen_pattern_formula(rng, "constrained_chain", {"x"});
    EXPECT_EQ(prop_of(f), (std::set<std::string>{"x"}));
  }
}

TEST(GenPatternFormula, EnoughPropositionsMeansDistinctBindings) {
  // Every template names at most six placeholders, so over six propositions
  // the binding must be injective: as many distinct atoms in the result as
  // in the skeleton it came from.  Pin that through the one kind using all
  // six, and determinism along the way.
  const std::vector<std::string> props{"a", "b", "c", "d", "e", "f"};
  Rng r1(31), r2(31);
  std::size_t max_props = 0;
  for (int i = 0; i < 60; ++i) {
    const Formula f = gen_pattern_formula(r1, "constrained_chain", props);
    EXPECT_EQ(f, gen_pattern_formula(r2, "constrained_chain", props));
    max_props = std::max(max_props, prop_of(f).size());
    EXPECT_GE(prop_of(f).size(), 3u);  // globally scope names p, s, t, z
  }
  EXPECT_EQ(max_props, 6u);  // the until scope names all six placeholders
}

TEST(GenTrace, DensityAndShape) {
  const Architecture arch = split_architecture({"a", "b", "c", "d"}, 2);
  Rng rng(123);
  const GlobalTrace t = gen_trace(rng, arch, 50, 0.5);
  ASSERT_EQ(t.size(), 50u);
  std::size_t observed = 0;
  for (const auto& locals : t.steps) {
    ASSERT_EQ(locals.size(), 2u);
    for (std::size_t i = 0; i < 2; ++i) {
      for (const std::string& p : locals[i])
        EXPECT_EQ(arch.owner(p), i);
      observed += locals[i].size();
    }
  }
  EXPECT_GT(observed, 60u);  // ~100 expected at density 0.5
  EXPECT_LT(observed, 140u);

  Rng zeros(5);
  for (const auto& locals : gen_trace(zeros, arch, 10, 0.0).steps)
    for (const Event& e : locals) EXPECT_TRUE(e.empty());
  Rng ones(5);
  for (const auto& locals : gen_trace(ones, arch, 10, 1.0).steps)
    EXPECT_EQ(merge_locals(locals).size(), 4u);
}

TEST(SplitArchitecture, RoundRobinDeal) {
  const Architecture arch = split_architecture({"a", "b", "c", "d", "e"}, 2);
  ASSERT_EQ(arch.size(), 2u);
  EXPECT_EQ(arch.component(0).name, "A");
  EXPECT_EQ(arch.component(0).props, (std::set<std::string>{"a", "c", "e"}));
  EXPECT_EQ(arch.component(1).props, (std::set<std::string>{"b", "d"}));
  EXPECT_EQ(split_architecture({"a"}, 1).size(), 1u);
  EXPECT_THROW(split_architecture({"a", "b"}, 0), std::invalid_argument);
  EXPECT_THROW(split_architecture({"a", "b"}, 3), std::invalid_argument);
}

}  // namespace
