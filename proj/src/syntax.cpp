#include "hitkernel/syntax.hpp"

#include <cassert>
#include <stdexcept>
#include <unordered_set>

namespace hitkernel {

using namespace node;

Span Span::merge(const Span& a, const Span& b) {
  if (!a.valid()) return b;
  if (!b.valid()) return a;
  Span s = a;
  s.end_line = b.end_line;
  s.end_col = b.end_col;
  return s;
}

TermPtr make(TermNode n, Span span) {
  return std::make_shared<const Term>(Term{std::move(n), span});
}

TermPtr var(std::size_t index, std::string hint) { return make(Var{index, std::move(hint)}); }
TermPtr universe(unsigned level) { return make(Universe{level}); }
TermPtr pi(std::string name, TermPtr domain, TermPtr codomain) {
  return make(Pi{std::move(domain), Bound{{std::move(name)}, std::move(codomain)}});
}
TermPtr arrow(TermPtr domain, TermPtr codomain) {
  return pi("_", std::move(domain), shift(codomain, 1));
}
TermPtr lam(std::string name, TermPtr body, TermPtr annotation) {
  return make(Lam{std::move(annotation), Bound{{std::move(name)}, std::move(body)}});
}
TermPtr app(TermPtr fn, TermPtr arg) { return make(App{std::move(fn), std::move(arg)}); }
TermPtr app(TermPtr fn, std::initializer_list<TermPtr> args) {
  for (const auto& a : args) fn = app(fn, a);
  return fn;
}
TermPtr sigma(std::string name, TermPtr first, TermPtr second) {
  return make(Sigma{std::move(first), Bound{{std::move(name)}, std::move(second)}});
}
TermPtr pair(TermPtr a, TermPtr b) { return make(Pair{std::move(a), std::move(b)}); }
TermPtr fst(TermPtr p) { return make(Fst{std::move(p)}); }
TermPtr snd(TermPtr p) { return make(Snd{std::move(p)}); }
TermPtr nat() { return make(Nat{}); }
TermPtr zero() { return make(Zero{}); }
TermPtr succ(TermPtr n) { return make(Succ{std::move(n)}); }
TermPtr numeral(unsigned n) {
  TermPtr t = zero();
  for (unsigned i = 0; i < n; ++i) t = succ(t);
  return t;
}
TermPtr unit_type() { return make(Unit{}); }
TermPtr star() { return make(Star{}); }
TermPtr id_type(TermPtr type, TermPtr lhs, TermPtr rhs) {
  return make(Id{std::move(type), std::move(lhs), std::move(rhs)});
}
TermPtr refl(TermPtr type, TermPtr point) { return make(Refl{std::move(type), std::move(point)}); }
TermPtr ref(std::string name) { return make(Ref{std::move(name)}); }

namespace {

Child at(const TermPtr& t, std::size_t binders = 0) { return Child{&t, binders}; }
Child at(const Bound& b) { return Child{&b.body, b.names.size()}; }

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

}  // namespace

std::vector<Child> children(const Term& t) {
  return std::visit(
      overloaded{
          [](const Var&) { return std::vector<Child>{}; },
          [](const Universe&) { return std::vector<Child>{}; },
          [](const Pi& n) { return std::vector<Child>{at(n.domain), at(n.codomain)}; },
          [](const Lam& n) { return std::vector<Child>{at(n.annotation), at(n.body)}; },
          [](const App& n) { return std::vector<Child>{at(n.fn), at(n.arg)}; },
          [](const Sigma& n) { return std::vector<Child>{at(n.first), at(n.second)}; },
          [](const Pair& n) { return std::vector<Child>{at(n.first), at(n.second)}; },
          [](const Fst& n) { return std::vector<Child>{at(n.pair)}; },
          [](const Snd& n) { return std::vector<Child>{at(n.pair)}; },
          [](const Nat&) { return std::vector<Child>{}; },
          [](const Zero&) { return std::vector<Child>{}; },
          [](const Succ& n) { return std::vector<Child>{at(n.pred)}; },
          [](const NatRec& n) {
            return std::vector<Child>{at(n.motive), at(n.zero_case), at(n.succ_case), at(n.scrutinee)};
          },
          [](const Unit&) { return std::vector<Child>{}; },
          [](const Star&) { return std::vector<Child>{}; },
          [](const Id& n) { return std::vector<Child>{at(n.type), at(n.lhs), at(n.rhs)}; },
          [](const Refl& n) { return std::vector<Child>{at(n.type), at(n.point)}; },
          [](const J& n) {
            return std::vector<Child>{at(n.type),      at(n.base),     at(n.motive),
                                      at(n.refl_case), at(n.endpoint), at(n.path)};
          },
          [](const Quot& n) { return std::vector<Child>{at(n.carrier), at(n.relation)}; },
          [](const QMk& n) { return std::vector<Child>{at(n.carrier), at(n.relation), at(n.point)}; },
          [](const QPath& n) {
            return std::vector<Child>{at(n.carrier), at(n.relation), at(n.lhs), at(n.rhs),
                                      at(n.witness)};
          },
          [](const QElim& n) {
            return std::vector<Child>{at(n.carrier),    at(n.relation), at(n.motive),
                                      at(n.point_case), at(n.coh_case), at(n.scrutinee)};
          },
          [](const Ref&) { return std::vector<Child>{}; },
      },
      t.node);
}

TermPtr with_children(const Term& t, const std::vector<TermPtr>& c) {
  auto rebound = [](const Bound& b, TermPtr body) { return Bound{b.names, std::move(body)}; };
  TermNode n = std::visit(
      overloaded{
          [&](const Var& x) -> TermNode { return x; },
          [&](const Universe& x) -> TermNode { return x; },
          [&](const Pi& x) -> TermNode { return Pi{c[0], rebound(x.codomain, c[1])}; },
          [&](const Lam& x) -> TermNode { return Lam{c[0], rebound(x.body, c[1])}; },
          [&](const App&) -> TermNode { return App{c[0], c[1]}; },
          [&](const Sigma& x) -> TermNode { return Sigma{c[0], rebound(x.second, c[1])}; },
          [&](const Pair&) -> TermNode { return Pair{c[0], c[1]}; },
          [&](const Fst&) -> TermNode { return Fst{c[0]}; },
          [&](const Snd&) -> TermNode { return Snd{c[0]}; },
          [&](const Nat& x) -> TermNode { return x; },
          [&](const Zero& x) -> TermNode { return x; },
          [&](const Succ&) -> TermNode { return Succ{c[0]}; },
          [&](const NatRec& x) -> TermNode {
            return NatRec{rebound(x.motive, c[0]), c[1], rebound(x.succ_case, c[2]), c[3]};
          },
          [&](const Unit& x) -> TermNode { return x; },
          [&](const Star& x) -> TermNode { return x; },
          [&](const Id&) -> TermNode { return Id{c[0], c[1], c[2]}; },
          [&](const Refl&) -> TermNode { return Refl{c[0], c[1]}; },
          [&](const J& x) -> TermNode {
            return J{c[0], c[1], rebound(x.motive, c[2]), c[3], c[4], c[5]};
          },
          [&](const Quot&) -> TermNode { return Quot{c[0], c[1]}; },
          [&](const QMk&) -> TermNode { return QMk{c[0], c[1], c[2]}; },
          [&](const QPath&) -> TermNode { return QPath{c[0], c[1], c[2], c[3], c[4]}; },
          [&](const QElim& x) -> TermNode {
            return QElim{c[0], c[1], rebound(x.motive, c[2]), rebound(x.point_case, c[3]),
                         rebound(x.coh_case, c[4]), c[5]};
          },
          [&](const Ref& x) -> TermNode { return x; },
      },
      t.node);
  return make(std::move(n), t.span);
}

namespace {

// Generic bottom-up rewrite of variables; `on_var` receives the variable and the binder depth.
template <class F>
TermPtr map_vars(const TermPtr& t, std::size_t depth, const F& on_var) {
  if (!t) return t;
  if (const auto* v = t->as<Var>()) return on_var(*v, depth, t);
  auto cs = children(*t);
  if (cs.empty()) return t;
  std::vector<TermPtr> replaced;
  replaced.reserve(cs.size());
  bool changed = false;
  for (const auto& c : cs) {
    replaced.push_back(map_vars(*c.term, depth + c.binders, on_var));
    changed = changed || replaced.back() != *c.term;
  }
  return changed ? with_children(*t, replaced) : t;
}

}  // namespace

TermPtr shift(const TermPtr& t, std::ptrdiff_t amount, std::size_t cutoff) {
  if (amount == 0) return t;
  return map_vars(t, cutoff, [amount](const Var& v, std::size_t depth, const TermPtr& self) {
    if (v.index < depth) return self;
    auto shifted = static_cast<std::ptrdiff_t>(v.index) + amount;
    if (shifted < static_cast<std::ptrdiff_t>(depth)) throw std::logic_error("shift: negative variable index");
    return make(Var{static_cast<std::size_t>(shifted), v.hint}, self->span);
  });
}

TermPtr instantiate(const TermPtr& body, const std::vector<TermPtr>& arguments) {
  const std::size_t k = arguments.size();
  if (k == 0) return body;
  return map_vars(body, 0, [&](const Var& v, std::size_t depth, const TermPtr& self) -> TermPtr {
    if (v.index < depth) return self;
    std::size_t rel = v.index - depth;
    if (rel < k) return shift(arguments[k - 1 - rel], static_cast<std::ptrdiff_t>(depth));
    return make(Var{v.index - k, v.hint}, self->span);
  });
}

bool alpha_eq(const TermPtr& t, const TermPtr& u) {
  if (t == u) return true;
  if (!t || !u) return false;
  if (t->node.index() != u->node.index()) return false;
  if (const auto* v = t->as<Var>()) return v->index == u->as<Var>()->index;
  if (const auto* l = t->as<Universe>()) return l->level == u->as<Universe>()->level;
  if (const auto* r = t->as<Ref>()) return r->name == u->as<Ref>()->name;
  auto ct = children(*t);
  auto cu = children(*u);
  if (ct.size() != cu.size()) return false;
  for (std::size_t i = 0; i < ct.size(); ++i) {
    if (!alpha_eq(*ct[i].term, *cu[i].term)) return false;
  }
  return true;
}

namespace {

bool scoped_under(const TermPtr& t, std::size_t depth) {
  if (!t) return true;
  if (const auto* v = t->as<Var>()) return v->index < depth;
  for (const auto& c : children(*t)) {
    if (!scoped_under(*c.term, depth + c.binders)) return false;
  }
  return true;
}

bool occurs_at(const TermPtr& t, std::size_t index) {
  if (!t) return false;
  if (const auto* v = t->as<Var>()) return v->index == index;
  for (const auto& c : children(*t)) {
    if (occurs_at(*c.term, index + c.binders)) return true;
  }
  return false;
}

void collect_refs(const TermPtr& t, std::vector<std::string>& out, std::unordered_set<std::string>& seen) {
  if (!t) return;
  if (const auto* r = t->as<Ref>()) {
    if (seen.insert(r->name).second) out.push_back(r->name);
    return;
  }
  for (const auto& c : children(*t)) collect_refs(*c.term, out, seen);
}

}  // namespace

bool well_scoped(const TermPtr& t, std::size_t depth) { return scoped_under(t, depth); }

bool occurs(const TermPtr& t, std::size_t index) { return occurs_at(t, index); }

std::vector<std::string> referenced_globals(const TermPtr& t) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  collect_refs(t, out, seen);
  return out;
}

std::size_t term_size(const TermPtr& t) {
  if (!t) return 0;
  std::size_t n = 1;
  for (const auto& c : children(*t)) n += term_size(*c.term);
  return n;
}

}  // namespace hitkernel
