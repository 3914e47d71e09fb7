#include "mcsp/process.hpp"

namespace mcsp {

Deferred::Deferred(Choice ret, Term term, std::function<Process()> thunk)
    : cell_(std::make_shared<Cell>()) {
  cell_->ret = std::move(ret);
  cell_->term = std::move(term);
  cell_->thunk = std::move(thunk);
}

Deferred::Deferred(const Process& p)
    : Deferred(p.ret(), p.term(), [p] { return p; }) {}

const Process& Deferred::force() const {
  Cell& cell = *cell_;
  std::call_once(cell.once, [&cell] {
    cell.value = std::make_shared<const Process>(cell.thunk());
    cell.thunk = nullptr;
  });
  return *cell.value;
}

ProcessNode::ProcessNode(ChoiceMap<Label> labels, ChoiceMap<Deferred> ext,
                         ChoiceMap<Deferred> internal, ChoiceMap<Value> ticks)
    : labels_(std::move(labels)), ext_(std::move(ext)), int_(std::move(internal)),
      ticks_(std::move(ticks)) {
  if (!(labels_.domain() == ext_.domain()))
    throw TypeMismatch("labels and external continuations use different index sets");
}

Process Process::terminated(Choice ret, Value v) {
  require_inhabits(ret, v, "terminate");
  Term t = term::ret(v);
  return Process(std::make_shared<const Data>(Data{std::move(ret), std::move(v), std::move(t)}));
}

Process Process::node(Choice ret, ProcessNode node, Term term) {
  for (const auto& v : node.ticks().values()) require_inhabits(ret, v, "tick value");
  return Process(
      std::make_shared<const Data>(Data{std::move(ret), std::move(node), std::move(term)}));
}

const Value& Process::value() const {
  if (!is_terminated()) throw Error("process has not terminated");
  return std::get<Value>(data_->body);
}

const ProcessNode& Process::node() const {
  if (is_terminated()) throw Error("terminated process has no node");
  return std::get<ProcessNode>(data_->body);
}

Process Process::with_term(Term t) const {
  return Process(std::make_shared<const Data>(Data{data_->ret, data_->body, std::move(t)}));
}

Process Process::retag(Choice ret) const {
  if (ret == data_->ret) return *this;
  if (ret.inhabited() || data_->ret.inhabited())
    throw TypeMismatch("cannot retag " + data_->ret.to_string() + " as " + ret.to_string());
  // Nothing of an uninhabited type terminates or ticks; only the
  // continuations need the new tag.
  const ProcessNode& n = node();
  auto retag_all = [&ret](const ChoiceMap<Deferred>& m) {
    std::vector<Deferred> out;
    for (const auto& d : m.values())
      out.emplace_back(ret, d.term(), [d, ret] { return d.force().retag(ret); });
    return ChoiceMap<Deferred>(m.domain(), std::move(out));
  };
  ProcessNode node(n.labels(), retag_all(n.ext()), retag_all(n.internal()), n.ticks());
  return Process(std::make_shared<const Data>(Data{std::move(ret), std::move(node), data_->term}));
}

namespace {

ChoiceMap<Deferred> no_deferred() { return ChoiceMap<Deferred>(Choice::empty(), {}); }
ChoiceMap<Label> no_labels() { return ChoiceMap<Label>(Choice::empty(), {}); }
ChoiceMap<Value> no_ticks() { return ChoiceMap<Value>(Choice::empty(), {}); }

// Both operands are nodes.
Process ext_nodes(const Process& p, const Process& q) {
  const Choice& c0 = p.ret();
  const Choice& c1 = q.ret();
  Choice c = Choice::sum(c0, c1);
  const ProcessNode& pn = p.node();
  const ProcessNode& qn = q.node();
  ValueMap in1 = ValueMap::inl(c0, c1);
  ValueMap in2 = ValueMap::inr(c0, c1);

  Choice e = Choice::sum(pn.ext_index(), qn.ext_index());
  std::vector<Label> labels = pn.labels().values();
  labels.insert(labels.end(), qn.labels().values().begin(), qn.labels().values().end());
  std::vector<Deferred> ext;
  for (const auto& d : pn.ext().values()) ext.push_back(fmap(in1, d));
  for (const auto& d : qn.ext().values()) ext.push_back(fmap(in2, d));

  Choice i = Choice::sum(pn.int_index(), qn.int_index());
  std::vector<Deferred> internal;
  for (const auto& d : pn.internal().values())
    internal.emplace_back(c, term::ext_choice(d.term(), q.term()),
                          [d, q] { return ext_choice(d.force(), q); });
  for (const auto& d : qn.internal().values())
    internal.emplace_back(c, term::ext_choice(p.term(), d.term()),
                          [p, d] { return ext_choice(p, d.force()); });

  Choice t = Choice::sum(pn.tick_index(), qn.tick_index());
  std::vector<Value> ticks;
  for (const auto& v : pn.ticks().values()) ticks.push_back(Value::inl(v));
  for (const auto& v : qn.ticks().values()) ticks.push_back(Value::inr(v));

  ProcessNode node(ChoiceMap<Label>(e, std::move(labels)), ChoiceMap<Deferred>(e, std::move(ext)),
                   ChoiceMap<Deferred>(i, std::move(internal)),
                   ChoiceMap<Value>(t, std::move(ticks)));
  return Process::node(c, std::move(node), term::ext_choice(p.term(), q.term()));
}

}  // namespace

Process stop(Choice c) {
  return Process::node(std::move(c), ProcessNode(no_labels(), no_deferred(), no_deferred(), no_ticks()),
                       term::stop());
}

Process skip(Choice c, Value a) {
  require_inhabits(c, a, "SKIP");
  Term t = term::skip(a);
  ProcessNode node(no_labels(), no_deferred(), no_deferred(),
                   ChoiceMap<Value>(Choice::unit(), {std::move(a)}));
  return Process::node(std::move(c), std::move(node), std::move(t));
}

Process prefix(Label l, Deferred p) {
  Choice c = p.ret();
  Term t = term::prefix(l, p.term());
  ProcessNode node(ChoiceMap<Label>(Choice::unit(), {std::move(l)}),
                   ChoiceMap<Deferred>(Choice::unit(), {std::move(p)}), no_deferred(), no_ticks());
  return Process::node(std::move(c), std::move(node), std::move(t));
}

Process ext_choice(const Process& p, const Process& q) {
  Term t = term::ext_choice(p.term(), q.term());
  const Choice& c0 = p.ret();
  const Choice& c1 = q.ret();
  if (!p.is_terminated() && !q.is_terminated()) return ext_nodes(p, q);
  if (!p.is_terminated())
    return add_timed_tick(Value::inr(q.value()), fmap(ValueMap::inl(c0, c1), p)).with_term(t);
  if (!q.is_terminated())
    return add_timed_tick(Value::inl(p.value()), fmap(ValueMap::inr(c0, c1), q)).with_term(t);
  return two_tick(c0, p.value(), c1, q.value()).with_term(t);
}

Process add_timed_tick(const Value& a, const Process& p) {
  if (p.is_terminated()) return p;
  const Choice& c = p.ret();
  require_inhabits(c, a, "addTick");
  const ProcessNode& n = p.node();

  std::vector<Deferred> internal;
  for (const auto& d : n.internal().values())
    internal.emplace_back(c, term::add_tick(a, d.term()),
                          [a, d] { return add_timed_tick(a, d.force()); });

  Choice t = Choice::sum(n.tick_index(), Choice::unit());
  std::vector<Value> ticks = n.ticks().values();
  ticks.push_back(a);

  ProcessNode node(n.labels(), n.ext(), ChoiceMap<Deferred>(n.int_index(), std::move(internal)),
                   ChoiceMap<Value>(t, std::move(ticks)));
  return Process::node(c, std::move(node), term::add_tick(a, p.term()));
}

Process two_tick(Choice c0, Value a, Choice c1, Value b) {
  require_inhabits(c0, a, "2-tick");
  require_inhabits(c1, b, "2-tick");
  Term t = term::ext_choice(term::ret(a), term::ret(b));
  // enumerate(Bool) = [false, true]
  ProcessNode node(no_labels(), no_deferred(), no_deferred(),
                   ChoiceMap<Value>(Choice::boolean(), {Value::inr(b), Value::inl(a)}));
  return Process::node(Choice::sum(std::move(c0), std::move(c1)), std::move(node), std::move(t));
}

Process int_choice(Deferred p, Deferred q) {
  const Choice& c0 = p.ret();
  const Choice& c1 = q.ret();
  Choice c = Choice::sum(c0, c1);
  Term t = term::int_choice(p.term(), q.term());
  // true ↦ left operand, false ↦ right operand
  std::vector<Deferred> internal{fmap(ValueMap::inr(c0, c1), q), fmap(ValueMap::inl(c0, c1), p)};
  ProcessNode node(no_labels(), no_deferred(),
                   ChoiceMap<Deferred>(Choice::boolean(), std::move(internal)), no_ticks());
  return Process::node(std::move(c), std::move(node), std::move(t));
}

Process int_choice(const Process& p, const Process& q) {
  return int_choice(Deferred(p), Deferred(q));
}

Process fmap(const ValueMap& f, const Process& p) {
  if (!compatible(f.from(), p.ret()))
    throw TypeMismatch("fmap " + f.display() + " expects " + f.from().to_string() + ", got " +
                       p.ret().to_string());
  Term t = term::fmap(f, p.term());
  if (p.is_terminated()) return Process::terminated(f.to(), f(p.value())).with_term(t);
  const ProcessNode& n = p.node();
  std::vector<Deferred> ext;
  for (const auto& d : n.ext().values()) ext.push_back(fmap(f, d));
  std::vector<Deferred> internal;
  for (const auto& d : n.internal().values()) internal.push_back(fmap(f, d));
  std::vector<Value> ticks;
  for (const auto& v : n.ticks().values()) ticks.push_back(f(v));
  ProcessNode node(n.labels(), ChoiceMap<Deferred>(n.ext_index(), std::move(ext)),
                   ChoiceMap<Deferred>(n.int_index(), std::move(internal)),
                   ChoiceMap<Value>(n.tick_index(), std::move(ticks)));
  return Process::node(f.to(), std::move(node), std::move(t));
}

Deferred fmap(const ValueMap& f, const Deferred& p) {
  return Deferred(f.to(), term::fmap(f, p.term()), [f, p] { return fmap(f, p.force()); });
}

Process bind(const Process& p, const Choice& ret, const ChoiceMap<Deferred>& k) {
  if (!compatible(k.domain(), p.ret()))
    throw TypeMismatch("bind continuation expects " + k.domain().to_string() + ", got " +
                       p.ret().to_string());
  for (const auto& d : k.values())
    if (!compatible(d.ret(), ret))
      throw TypeMismatch("bind continuation returns " + d.ret().to_string() + ", expected " +
                         ret.to_string());
  if (p.is_terminated()) return k.at(p.value()).force().retag(ret);

  auto bind_term = [&k](const Term& scrutinee) {
    std::vector<Branch> branches;
    auto elems = enumerate(k.domain());
    for (std::size_t i = 0; i < elems.size(); ++i)
      branches.push_back(Branch{elems[i], k.at_index(i).term()});
    return term::bind(scrutinee, std::move(branches));
  };

  const ProcessNode& n = p.node();
  std::vector<Deferred> ext;
  for (const auto& d : n.ext().values())
    ext.emplace_back(ret, bind_term(d.term()), [d, ret, k] { return bind(d.force(), ret, k); });

  std::vector<Deferred> internal;
  for (const auto& d : n.internal().values())
    internal.emplace_back(ret, bind_term(d.term()), [d, ret, k] { return bind(d.force(), ret, k); });
  for (const auto& v : n.ticks().values()) internal.push_back(k.at(v));

  ProcessNode node(n.labels(), ChoiceMap<Deferred>(n.ext_index(), std::move(ext)),
                   ChoiceMap<Deferred>(Choice::sum(n.int_index(), n.tick_index()),
                                       std::move(internal)),
                   no_ticks());
  return Process::node(ret, std::move(node), bind_term(p.term()));
}

}  // namespace mcsp
