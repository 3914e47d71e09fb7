#include "support.hpp"

using namespace mcsp;
using namespace mcsp::testing;

namespace {

std::vector<DiagnosticKind> kinds(const std::string& src) {
  std::vector<DiagnosticKind> out;
  try {
    for (const auto& d : check_env(parse(src))) out.push_back(d.kind);
  } catch (const ParseError& e) {
    out.push_back(e.diagnostic().kind);
  }
  return out;
}

bool has(const std::vector<DiagnosticKind>& ks, DiagnosticKind k) {
  return std::find(ks.begin(), ks.end(), k) != ks.end();
}

void round_trip(const std::string& src) {
  Env a = parse(src);
  std::string printed = pretty(a);
  Env b = parse(printed);
  ASSERT_EQ(a.definitions().size(), b.definitions().size()) << printed;
  for (std::size_t i = 0; i < a.definitions().size(); ++i) {
    const auto& x = a.definitions()[i];
    const auto& y = b.definitions()[i];
    EXPECT_EQ(x.name, y.name);
    EXPECT_EQ(x.annotation, y.annotation);
    EXPECT_TRUE(same_term(x.body, y.body)) << pretty(x) << "\n vs \n" << pretty(y);
  }
  EXPECT_EQ(pretty(b), printed);
}

}  // namespace

TEST(Parse, SingleDefinition) {
  Env env = parse("P : {u} = a -> SKIP u");
  ASSERT_EQ(env.definitions().size(), 1u);
  const Definition& d = env.definitions()[0];
  EXPECT_EQ(d.name, "P");
  EXPECT_EQ(d.annotation, Choice::named("", {"u"}));
  ASSERT_EQ(d.body->kind, TermKind::Prefix);
  EXPECT_EQ(d.body->label, L("a"));
  ASSERT_EQ(d.body->kids[0]->kind, TermKind::Skip);
  EXPECT_EQ(d.body->kids[0]->value, atom("u"));
}

TEST(Parse, PrecedenceAndAssociativity) {
  // |~| binds looser than [] which binds looser than prefix.
  Env env = parse("P : Unit + Unit + Unit = a -> STOP [] b -> STOP |~| c -> STOP [] SKIP inr inr tt");
  const Term& t = env.definitions()[0].body;
  ASSERT_EQ(t->kind, TermKind::IntChoice);
  EXPECT_EQ(t->kids[0]->kind, TermKind::ExtChoice);
  EXPECT_EQ(t->kids[1]->kind, TermKind::ExtChoice);
  EXPECT_EQ(pretty(t), "a -> STOP [] b -> STOP |~| c -> STOP [] SKIP inr inr tt");
}

TEST(Parse, ChoiceTypes) {
  Env env = parse("P : (Unit + Bool) + Fin 3 + {x, y} = STOP");
  Choice c = env.definitions()[0].annotation;
  EXPECT_EQ(c, Choice::sum(Choice::sum(Choice::unit(), Choice::boolean()),
                           Choice::sum(Choice::fin(3), Choice::named("", {"x", "y"}))));
}

TEST(Parse, Comments) {
  Env env = parse("-- heading\nP : Unit = STOP -- trailing\n-- end\n");
  EXPECT_EQ(env.definitions().size(), 1u);
}

TEST(Parse, Bind) {
  Env env = parse(
      "C : Bool = SKIP true |~| SKIP false\n"
      "P : Unit = C >>= { true -> a -> STOP ; false -> RETURN tt }");
  const Term& t = env.definitions()[1].body;
  ASSERT_EQ(t->kind, TermKind::Bind);
  EXPECT_EQ(t->branches.size(), 2u);
  EXPECT_EQ(t->branches[1].body->kind, TermKind::Return);
}

TEST(Parse, SyntaxErrorsCarryPositions) {
  try {
    parse("P : Unit = a -> \nQ : Unit = STOP");
    FAIL() << "expected a syntax error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.diagnostic().kind, DiagnosticKind::Syntax);
    EXPECT_EQ(e.diagnostic().pos.line, 2);
  }
  EXPECT_THROW(parse("P : Fin 0 = STOP"), ParseError);
  EXPECT_THROW(parse("P : {u, u} = STOP"), ParseError);
  EXPECT_THROW(parse("STOP : Unit = STOP"), ParseError);
}

TEST(Parse, Duplicate) {
  EXPECT_EQ(kinds("P : Unit = STOP\nP : Unit = STOP"), std::vector<DiagnosticKind>{DiagnosticKind::Duplicate});
}

TEST(Pretty, Forms) {
  EXPECT_EQ(pretty(term::ext_choice(term::ref("P"), term::ref("Q"))), "P [] Q");
  EXPECT_EQ(pretty(term::prefix(L("a"), term::stop())), "a -> STOP");
  EXPECT_EQ(pretty(term::ext_choice(term::int_choice(term::ref("P"), term::ref("Q")), term::ref("R"))),
            "(P |~| Q) [] R");
  EXPECT_EQ(pretty(term::fmap(ValueMap::Name::Swap, term::ext_choice(term::ref("P"), term::ref("Q")))),
            "fmap swap (P [] Q)");
  Definition d{"P", Choice::named("", {"u"}), term::prefix(L("a"), term::skip(atom("u"))), {}};
  EXPECT_EQ(pretty(d), "P : {u} = a -> SKIP u");
}

TEST(Pretty, RoundTrip) {
  round_trip("P : {u} = a -> SKIP u");
  round_trip("P : Unit + Unit = (a -> SKIP tt [] b -> STOP) |~| fmap inl (c -> P)");
  round_trip("X : Empty = X |~| X\nY : Empty + Empty = fmap inl X");
  round_trip(
      "C : Bool = SKIP true |~| SKIP false\n"
      "P : {u, w} = C >>= { false -> RETURN u ; true -> addTick w (a -> P) }");
  round_trip("P : (Unit + Unit) + Fin 2 = fmap swap (SKIP inr tt [] (e -> STOP |~| SKIP 1))");
  round_trip("P : Unit + (Unit + Unit) = ((a -> STOP) [] (b -> STOP)) [] c -> STOP");
}

TEST(Check, WellTyped) {
  EXPECT_TRUE(kinds("P : {u} + {w} = (a -> SKIP u) [] (b -> SKIP w)").empty());
  EXPECT_TRUE(kinds("X : Empty = X |~| X").empty());
  EXPECT_TRUE(kinds("P : Unit = a -> P").empty());
  EXPECT_TRUE(kinds("P : Unit + Empty = fmap inl (a -> SKIP tt)").empty());
}

TEST(Check, TypeErrors) {
  EXPECT_TRUE(has(kinds("P : {u} = (a -> SKIP u) [] (b -> SKIP w)"), DiagnosticKind::Type));
  EXPECT_TRUE(has(kinds("P : Bool = SKIP u"), DiagnosticKind::Type));
  EXPECT_TRUE(has(kinds("Q : Bool = STOP\nP : Unit = Q"), DiagnosticKind::Type));
  EXPECT_TRUE(has(kinds("P : Unit = fmap swap (SKIP tt)"), DiagnosticKind::Type));
}

TEST(Check, Unguarded) {
  EXPECT_TRUE(has(kinds("P : Unit = P"), DiagnosticKind::Unguarded));
  EXPECT_TRUE(has(kinds("P : Unit = Q\nQ : Unit = P"), DiagnosticKind::Unguarded));
  EXPECT_TRUE(has(kinds("P : Unit + Unit = P [] a -> STOP"), DiagnosticKind::Unguarded));
  EXPECT_TRUE(kinds("P : Empty = (a -> P) [] b -> STOP").empty());
  // A bind body runs only after the scrutinee ticks; RETURN may skip ahead.
  EXPECT_TRUE(has(kinds("R : Unit = RETURN tt\nP : Unit = R >>= { tt -> P }"), DiagnosticKind::Unguarded));
  EXPECT_TRUE(kinds("R : Unit = a -> SKIP tt\nP : Unit = R >>= { tt -> P }").empty());
}

TEST(Check, NamesAndPatterns) {
  EXPECT_TRUE(has(kinds("P : Unit = Q"), DiagnosticKind::UnknownName));
  EXPECT_TRUE(has(kinds("C : Bool = SKIP true\nP : Unit = C >>= { true -> STOP }"), DiagnosticKind::Pattern));
  EXPECT_TRUE(has(kinds("C : Bool = SKIP true\nP : Unit = C >>= { true -> STOP ; true -> STOP ; false -> STOP }"),
                  DiagnosticKind::Pattern));
  EXPECT_TRUE(has(kinds("C : Unit = SKIP tt\nP : Unit = C >>= { 3 -> STOP }"), DiagnosticKind::Pattern));
  EXPECT_TRUE(has(kinds("P : Unit = SKIP tt >>= { tt -> STOP }"), DiagnosticKind::Inference));
}

TEST(Check, DiagnosticFormat) {
  auto ds = check_env(parse("P : Unit = P"));
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].definition, "P");
  EXPECT_NE(format(ds[0]).find("unguarded error in P"), std::string::npos) << format(ds[0]);
}

TEST(Synthesize, Types) {
  Env env = load("C : Bool = SKIP true\nD : {u} = SKIP u");
  EXPECT_EQ(synthesize(env, term::ref("C")), Choice::boolean());
  EXPECT_EQ(synthesize(env, term::ext_choice(term::ref("C"), term::ref("D"))),
            Choice::sum(Choice::boolean(), Choice::named("", {"u"})));
  EXPECT_EQ(synthesize(env, term::prefix(L("a"), term::ref("D"))), Choice::named("", {"u"}));
  EXPECT_FALSE(synthesize(env, term::skip(Value::boolean(true))));
}

TEST(Elaborate, Basics) {
  Env env = load("P : Unit = a -> STOP\nX : Empty = X |~| X\nQ : {u} + Unit = SKIP u [] (b -> STOP)");
  EXPECT_EQ(initials(elaborate(env, "P")), Set({"a"}));
  Process x = elaborate(env, "X");
  for (int i = 0; i < 3; ++i) {
    ASSERT_FALSE(x.is_terminated());
    EXPECT_EQ(x.node().int_index(), Choice::boolean());
    EXPECT_EQ(x.node().ext().size(), 0u);
    EXPECT_EQ(x.node().ticks().size(), 0u);
    x = x.node().internal().at_index(0).force();
  }
  EXPECT_EQ(trace_set(elaborate(env, "Q"), 2), (TraceSet{T({}), T({}, Value::inl(atom("u"))), T({"b"})}));
  EXPECT_THROW(elaborate(env, "Nope"), UnknownName);
}

TEST(Elaborate, RecursionUnfoldsLazily) {
  Env env = load("P : Unit = a -> b -> P");
  TraceSet ts = trace_set(elaborate(env, "P"), 5);
  EXPECT_TRUE(ts.count(T({"a", "b", "a", "b", "a"})));
  EXPECT_EQ(ts.size(), 6u);
}

TEST(Elaborate, KernelCarriesTerms) {
  Env env = load("P : Unit = a -> Q\nQ : Unit = b -> STOP");
  Process p = elaborate(env, "P");
  EXPECT_EQ(pretty(p.term()), "P");
  EXPECT_EQ(pretty(p.node().ext().at_index(0).term()), "Q");
}

TEST(Alphabet, SortedUnique) {
  Env env = parse("P : Unit = c -> a -> STOP\nQ : Unit = a -> b -> P");
  EXPECT_EQ(alphabet(env), Ls({"a", "b", "c"}));
}
