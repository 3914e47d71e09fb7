#include "mcsp/laws.hpp"
#include "support.hpp"

using namespace mcsp;
using namespace mcsp::testing;

namespace {

std::size_t count_kind(const Term& t, TermKind k) {
  std::size_t n = t->kind == k;
  for (const auto& kid : t->kids) n += count_kind(kid, k);
  for (const auto& b : t->branches) n += count_kind(b.body, k);
  return n;
}

}  // namespace

TEST(Generator, Deterministic) {
  for (std::uint64_t seed : {0u, 1u, 17u, 9999u}) {
    GenConfig c;
    c.seed = seed;
    EXPECT_EQ(pretty(gen_process(c)), pretty(gen_process(c)));
  }
  GenConfig a, b;
  a.seed = 1;
  b.seed = 2;
  EXPECT_NE(pretty(gen_process(a)), pretty(gen_process(b)));
}

TEST(Generator, WellTypedAndFinite) {
  std::size_t binds = 0, ticks = 0, fmaps = 0, refs = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    GenConfig c;
    c.seed = seed;
    Env env = gen_process(c);
    auto ds = check_env(env);
    ASSERT_TRUE(ds.empty()) << "seed " << seed << "\n" << pretty(env) << "\n" << format(ds[0]);
    ASSERT_LE(env.definitions().size(), c.max_definitions);
    for (const auto& d : env.definitions()) {
      binds += count_kind(d.body, TermKind::Bind);
      ticks += count_kind(d.body, TermKind::AddTick);
      fmaps += count_kind(d.body, TermKind::Fmap);
      refs += count_kind(d.body, TermKind::Ref);
    }
    // Printing and reparsing preserves the program.
    EXPECT_EQ(pretty(parse(pretty(env))), pretty(env));
    if (seed % 10 == 0) EXPECT_TRUE(build_lts(env, root_name(c)).complete()) << "seed " << seed;
  }
  EXPECT_GT(binds, 100u);
  EXPECT_GT(ticks, 100u);
  EXPECT_GT(fmaps, 100u);
  EXPECT_GT(refs, 100u);
}

TEST(Generator, RespectsConfig) {
  GenConfig c;
  c.seed = 5;
  c.name_prefix = "Z";
  c.labels = {Label("x")};
  c.root_type = Choice::boolean();
  Env env = gen_process(c);
  EXPECT_EQ(root_name(c), "Z0");
  EXPECT_EQ(env.find("Z0")->annotation, Choice::boolean());
  for (const auto& l : alphabet(env)) EXPECT_EQ(l, Label("x"));
}

TEST(Laws, NamesAreStable) {
  EXPECT_EQ(law_names(), (std::vector<std::string>{"extchoice-comm", "extchoice-comm-failures", "reflexivity",
                                                   "antisymmetry", "transitivity", "prefix-closure",
                                                   "trace-monotone", "addtick-trace", "lts-oracle"}));
  EXPECT_THROW(run_law("no-such-law", 1, 0, 3), Error);
}

TEST(Laws, AllHoldOnGeneratedInputs) {
  for (const auto& law : law_names()) {
    LawReport r = run_law(law, 200, 1, 3);
    EXPECT_EQ(r.law, law);
    EXPECT_EQ(r.trials, 200u);
    EXPECT_TRUE(r.passed()) << law << " seed " << r.failures[0].seed << "\n"
                            << r.failures[0].inputs << "\n"
                            << r.failures[0].witness;
  }
}

TEST(Laws, ExamplesByHand) {
  Env env = load(
      "PE : Unit + Unit = (a -> SKIP tt) [] (b -> SKIP tt)\n"
      "PI : Unit + Unit = (a -> SKIP tt) |~| (b -> SKIP tt)\n"
      "S : Unit + Unit = STOP\n"
      "A : {u, w} = a -> SKIP u\n"
      "B : {u} = b -> STOP");
  Process pe = elaborate(env, "PE");
  Process pi = elaborate(env, "PI");
  EXPECT_TRUE(check_ext_choice_comm(pe, pi, 4).passed());
  EXPECT_TRUE(check_ext_choice_comm_failures(elaborate(env, "A"), elaborate(env, "B"), 4).passed());
  EXPECT_TRUE(check_partial_order(build_lts(env, "PI"), build_lts(env, "PE"), build_lts(env, "S"), 4).passed());
  EXPECT_TRUE(check_prefix_closure(pe, 4).passed());
  EXPECT_TRUE(check_trace_monotone(pi, 4).passed());
  EXPECT_TRUE(check_add_tick_trace_effect(pe, Value::inl(Value::unit()), 4).passed());
  EXPECT_TRUE(check_lts_oracle(pi, env, 4).passed());
}

TEST(Laws, AddTickNeedsANode) {
  EXPECT_THROW(check_add_tick_trace_effect(Process::terminated(Choice::unit(), Value::unit()), Value::unit(), 2),
               Error);
}

TEST(Laws, ReplayFromSeed) {
  // A trial is reproducible from its seed alone: the same seed yields the
  // same report, including recorded inputs.
  LawReport a = run_law("transitivity", 5, 40, 3);
  LawReport b = run_law("transitivity", 5, 40, 3);
  EXPECT_EQ(a.trials, b.trials);
  EXPECT_EQ(a.failures.size(), b.failures.size());
  EXPECT_EQ(a.bounded, b.bounded);
  LawReport one = run_law("transitivity", 1, 42, 3);
  EXPECT_EQ(one.trials, 1u);
}

TEST(Laws, MergeTagsFailures) {
  LawReport total;
  total.law = "x";
  LawReport trial;
  trial.trials = 1;
  trial.failures.push_back(LawFailure{0, "", "witness"});
  total.merge(trial, 77, "P0 : Unit = STOP");
  total.merge(LawReport{"x", 1, {}, true}, 78, "");
  EXPECT_EQ(total.trials, 2u);
  ASSERT_EQ(total.failures.size(), 1u);
  EXPECT_EQ(total.failures[0].seed, 77u);
  EXPECT_EQ(total.failures[0].inputs, "P0 : Unit = STOP");
  EXPECT_EQ(total.failures[0].witness, "witness");
  EXPECT_TRUE(total.bounded);
  EXPECT_FALSE(total.passed());
}
