#include "support.hpp"

using namespace mcsp;
using namespace mcsp::testing;

namespace {

const Value u = atom("u");
const Value w = atom("w");

Process pre(const char* l, const Process& p) { return prefix(L(l), Deferred(p)); }

}  // namespace

TEST(Kernel, Stop) {
  Process s = stop(Choice::unit());
  EXPECT_EQ(s.node().ext_index(), Choice::empty());
  EXPECT_EQ(trace_set(s, 5), (TraceSet{T({})}));
  EXPECT_TRUE(is_stable(s));
}

TEST(Kernel, Skip) {
  Process s = skip(Choice::boolean(), Value::boolean(true));
  EXPECT_EQ(trace_set(s, 3), (TraceSet{T({}), T({}, Value::boolean(true))}));
  EXPECT_TRUE(is_stable(s));
  EXPECT_TRUE(is_trace(Process::terminated(Choice::boolean(), Value::boolean(true)), T({}, Value::boolean(true)), 0));
  EXPECT_THROW(skip(Choice::boolean(), u), TypeMismatch);
}

TEST(Kernel, Prefix) {
  EXPECT_EQ(trace_set(pre("a", skip(V(), u)), 3), (TraceSet{T({}), T({"a"}), T({"a"}, u)}));
  EXPECT_EQ(trace_set(pre("a", stop(V())), 1), (TraceSet{T({}), T({"a"})}));
  EXPECT_EQ(initials(pre("a", stop(V()))), Set({"a"}));
  Process p = pre("a", stop(V()));
  EXPECT_EQ(p.node().labels().at(Value::unit()), L("a"));
}

TEST(Kernel, ExtChoiceOfTerminated) {
  Process p = ext_choice(Process::terminated(V(), u), Process::terminated(W(), w));
  EXPECT_EQ(p.ret(), Choice::sum(V(), W()));
  EXPECT_EQ(trace_set(p, 1), (TraceSet{T({}), T({}, Value::inl(u)), T({}, Value::inr(w))}));
}

TEST(Kernel, ExtChoiceOfNodes) {
  Process p = ext_choice(pre("a", skip(V(), u)), pre("b", skip(W(), w)));
  EXPECT_EQ(trace_set(p, 3), (TraceSet{T({}), T({"a"}), T({"b"}), T({"a"}, Value::inl(u)),
                                       T({"b"}, Value::inr(w))}));
  EXPECT_EQ(p.node().ext_index(), Choice::sum(Choice::unit(), Choice::unit()));
}

TEST(Kernel, ExtChoiceMixedLosesTickAfterEvent) {
  Process p = ext_choice(Process::terminated(V(), u), pre("b", stop(W())));
  TraceSet ts = trace_set(p, 3);
  EXPECT_EQ(ts, (TraceSet{T({}), T({}, Value::inl(u)), T({"b"})}));
  EXPECT_FALSE(ts.count(T({"b"}, Value::inl(u))));
  EXPECT_FALSE(is_trace(p, T({"b"}, Value::inl(u)), 10));
}

TEST(Kernel, ExtChoiceMixedOtherSide) {
  Process p = ext_choice(pre("b", stop(V())), Process::terminated(W(), w));
  EXPECT_EQ(trace_set(p, 3), (TraceSet{T({}), T({}, Value::inr(w)), T({"b"})}));
}

TEST(Kernel, AddTimedTick) {
  EXPECT_EQ(trace_set(add_timed_tick(u, stop(V())), 2), (TraceSet{T({}), T({}, u)}));
  EXPECT_EQ(trace_set(add_timed_tick(u, pre("b", stop(V()))), 2), (TraceSet{T({}), T({}, u), T({"b"})}));
  Process p = add_timed_tick(u, skip(V(), w));
  EXPECT_EQ(p.node().ticks().size(), 2u);
  std::set<Value> vs(p.node().ticks().values().begin(), p.node().ticks().values().end());
  EXPECT_EQ(vs, (std::set<Value>{u, w}));
}

TEST(Kernel, AddTimedTickSurvivesInternalSteps) {
  // The extra tick stays available after τ but not after a visible event.
  Value a = Value::inl(u);
  Process p = add_timed_tick(a, int_choice(pre("a", stop(V())), stop(V())));
  EXPECT_EQ(trace_set(p, 3), (TraceSet{T({}), T({}, a), T({"a"})}));
  for (const auto& d : p.node().internal().values()) {
    const Process& q = d.force();
    ASSERT_FALSE(q.is_terminated());
    std::set<Value> vs(q.node().ticks().values().begin(), q.node().ticks().values().end());
    EXPECT_TRUE(vs.count(a));
    for (const auto& e : q.node().ext().values()) EXPECT_TRUE(e.force().node().ticks().values().empty());
  }
}

TEST(Kernel, TwoTick) {
  Process p = two_tick(V(), u, W(), w);
  EXPECT_EQ(trace_set(p, 1), (TraceSet{T({}), T({}, Value::inl(u)), T({}, Value::inr(w))}));
  EXPECT_TRUE(is_stable(p));
  EXPECT_TRUE(initials(p).empty());
}

TEST(Kernel, IntChoice) {
  Process p = int_choice(pre("a", stop(V())), pre("b", stop(W())));
  EXPECT_EQ(trace_set(p, 2), (TraceSet{T({}), T({"a"}), T({"b"})}));
  EXPECT_FALSE(is_stable(p));
  EXPECT_EQ(p.node().int_index(), Choice::boolean());
  Process e = ext_choice(pre("a", stop(V())), pre("b", stop(W())));
  EXPECT_EQ(trace_set(p, 2), trace_set(e, 2));
}

TEST(Kernel, Fmap) {
  Process p = ext_choice(skip(V(), u), skip(W(), w));
  EXPECT_EQ(trace_set(fmap(ValueMap::identity(p.ret()), p), 2), trace_set(p, 2));
  Process tt = two_tick(V(), u, W(), w);
  EXPECT_EQ(trace_set(fmap(ValueMap::swap(V(), W()), tt), 1),
            (TraceSet{T({}), T({}, Value::inr(u)), T({}, Value::inl(w))}));
  Process s = fmap(ValueMap::inl(V(), W()), skip(V(), u));
  EXPECT_EQ(s.node().ticks().at_index(0), Value::inl(u));
  EXPECT_THROW(fmap(ValueMap::identity(W()), skip(V(), u)), TypeMismatch);
}

TEST(Kernel, BindOfTerminated) {
  auto k = ChoiceMap<Deferred>::build(V(), [](const Value& x) {
    return Deferred(x == u ? pre("b", stop(W())) : stop(W()));
  });
  Process r = bind(Process::terminated(V(), u), W(), k);
  EXPECT_EQ(trace_set(r, 3), trace_set(pre("b", stop(W())), 3));
}

TEST(Kernel, BindTickBecomesTau) {
  auto k = ChoiceMap<Deferred>::build(V(), [](const Value& x) {
    return Deferred(x == u ? pre("b", stop(W())) : stop(W()));
  });
  Process r = bind(skip(V(), u), W(), k);
  EXPECT_EQ(trace_set(r, 3), (TraceSet{T({}), T({"b"})}));
  EXPECT_FALSE(is_stable(r));
}

TEST(Kernel, BindRightIdentity) {
  Process p = pre("a", skip(V(), u));
  auto k = ChoiceMap<Deferred>::build(V(), [](const Value& x) { return Deferred(Process::terminated(V(), x)); });
  EXPECT_EQ(trace_set(bind(p, V(), k), 3), trace_set(p, 3));
}

TEST(Kernel, ExtIndexIsUnionOfOperands) {
  Process n = ext_choice(pre("a", stop(V())), pre("b", stop(V())));
  Process m = pre("c", stop(V()));
  Process p = ext_choice(n, m);
  EXPECT_EQ(p.node().ext_index(), Choice::sum(n.node().ext_index(), m.node().ext_index()));
  EXPECT_EQ(initials(p), Set({"a", "b", "c"}));
}

TEST(Kernel, ContinuationsAreMemoized) {
  int forced = 0;
  Deferred d(Choice::unit(), term::stop(), [&forced] {
    ++forced;
    return stop(Choice::unit());
  });
  Process p = prefix(L("a"), d);
  p.node().ext().at_index(0).force();
  p.node().ext().at_index(0).force();
  d.force();
  EXPECT_EQ(forced, 1);
}

TEST(Kernel, RetagBetweenUninhabited) {
  Choice e2 = Choice::sum(Choice::empty(), Choice::empty());
  Process p = pre("a", pre("b", stop(Choice::empty())));
  Process r = p.retag(e2);
  EXPECT_EQ(r.ret(), e2);
  // Retagging reaches continuations too.
  EXPECT_EQ(r.node().ext().at_index(0).force().ret(), e2);
  EXPECT_EQ(trace_set(r, 3), trace_set(p, 3));
  EXPECT_THROW(stop(Choice::unit()).retag(Choice::empty()), TypeMismatch);
}
