#include "hitkernel/normalizer.hpp"

#include <stdexcept>

namespace hitkernel {

namespace {

// Relations are compared and read back at `carrier -> carrier -> U`; the level is irrelevant there.
constexpr unsigned kAnyLevel = 1u << 20;

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

[[noreturn]] void internal(const std::string& what) { throw std::logic_error("normalizer: " + what); }

ValuePtr push_frame(const ValuePtr& v, Frame f) {
  if (const auto* n = v->as<val::Neutral>()) {
    val::Neutral out = *n;
    out.spine.push_back(std::move(f));
    return make_value(std::move(out));
  }
  return make_value(val::Neutral{Stuck{v}, {std::move(f)}});
}

bool is_neutral(const ValuePtr& v) { return v->is<val::Neutral>(); }

}  // namespace

const GlobalEntry* GlobalEnv::find(const std::string& name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : it->second.get();
}

const GlobalEntry& GlobalEnv::add(GlobalEntry entry) {
  auto name = entry.name;
  auto [it, inserted] = entries_.emplace(name, std::make_unique<GlobalEntry>(std::move(entry)));
  if (!inserted) throw std::logic_error("duplicate global " + name);
  order_.push_back(name);
  return *it->second;
}

Locals Locals::extend(std::string name, ValuePtr type) const {
  Locals out;
  out.names.reserve(names.size() + 1);
  out.types.reserve(types.size() + 1);
  out.names = names;
  out.types = types;
  out.names.push_back(std::move(name));
  out.types.push_back(std::move(type));
  return out;
}

ValuePtr fresh_var(std::size_t level, std::string hint) {
  return make_value(val::Neutral{VarHead{level, std::move(hint)}, {}});
}

Normalizer::Normalizer(const GlobalEnv& globals, EvalOptions options) : globals_(globals), options_(options) {}

// ---------------------------------------------------------------------------------------------
// Evaluation

ValuePtr Normalizer::apply(const Closure& c, const std::vector<ValuePtr>& args) const {
  if (args.size() != c.arity()) internal("closure arity mismatch");
  Env env;
  env.reserve(c.env.size() + args.size());
  env.insert(env.end(), c.env.begin(), c.env.end());
  env.insert(env.end(), args.begin(), args.end());
  return eval(env, c.body);
}

ValuePtr Normalizer::eval(const Env& env, const TermPtr& t) const {
  using namespace node;
  auto closure = [&](const Bound& b) { return Closure{env, b.body, b.names}; };
  auto ev = [&](const TermPtr& s) { return eval(env, s); };
  return std::visit(
      overloaded{
          [&](const Var& v) -> ValuePtr {
            if (v.index >= env.size()) internal("unbound variable during evaluation");
            return env[env.size() - 1 - v.index];
          },
          [&](const Universe& u) -> ValuePtr { return make_value(val::Universe{u.level}); },
          [&](const Pi& p) -> ValuePtr {
            return make_value(val::Pi{p.codomain.names[0], ev(p.domain), closure(p.codomain)});
          },
          [&](const Lam& l) -> ValuePtr { return make_value(val::Lam{l.body.names[0], closure(l.body)}); },
          [&](const App& a) -> ValuePtr { return do_app(ev(a.fn), ev(a.arg)); },
          [&](const Sigma& s) -> ValuePtr {
            return make_value(val::Sigma{s.second.names[0], ev(s.first), closure(s.second)});
          },
          [&](const Pair& p) -> ValuePtr { return make_value(val::Pair{ev(p.first), ev(p.second)}); },
          [&](const Fst& f) -> ValuePtr { return do_fst(ev(f.pair)); },
          [&](const Snd& s) -> ValuePtr { return do_snd(ev(s.pair)); },
          [&](const Nat&) -> ValuePtr { return make_value(val::Nat{}); },
          [&](const Zero&) -> ValuePtr { return make_value(val::Zero{}); },
          [&](const Succ& s) -> ValuePtr { return make_value(val::Succ{ev(s.pred)}); },
          [&](const NatRec& r) -> ValuePtr {
            return do_natrec(closure(r.motive), ev(r.zero_case), closure(r.succ_case), ev(r.scrutinee));
          },
          [&](const Unit&) -> ValuePtr { return make_value(val::Unit{}); },
          [&](const Star&) -> ValuePtr { return make_value(val::Star{}); },
          [&](const Id& i) -> ValuePtr { return make_value(val::Id{ev(i.type), ev(i.lhs), ev(i.rhs)}); },
          [&](const Refl& r) -> ValuePtr { return make_value(val::Refl{ev(r.type), ev(r.point)}); },
          [&](const J& j) -> ValuePtr {
            return do_j(ev(j.type), ev(j.base), closure(j.motive), ev(j.refl_case), ev(j.endpoint), ev(j.path));
          },
          [&](const Quot& q) -> ValuePtr { return make_value(val::Quot{ev(q.carrier), ev(q.relation)}); },
          [&](const QMk& q) -> ValuePtr {
            return make_value(val::QMk{ev(q.carrier), ev(q.relation), ev(q.point)});
          },
          [&](const QPath& q) -> ValuePtr {
            return make_value(val::QPath{ev(q.carrier), ev(q.relation), ev(q.lhs), ev(q.rhs), ev(q.witness)});
          },
          [&](const QElim& q) -> ValuePtr {
            return do_qelim(ev(q.carrier), ev(q.relation), closure(q.motive), closure(q.point_case),
                            closure(q.coh_case), ev(q.scrutinee));
          },
          [&](const Ref& r) -> ValuePtr {
            const GlobalEntry* e = globals_.find(r.name);
            if (!e) internal("unknown global " + r.name);
            return e->value;
          },
      },
      t->node);
}

ValuePtr Normalizer::do_app(const ValuePtr& fn, const ValuePtr& arg) const {
  if (const auto* l = fn->as<val::Lam>()) return apply(l->body, {arg});
  if (is_neutral(fn)) return push_frame(fn, frame::App{arg});
  internal("application of a non-function");
}

ValuePtr Normalizer::do_fst(const ValuePtr& p) const {
  if (const auto* pr = p->as<val::Pair>()) return pr->first;
  if (is_neutral(p)) return push_frame(p, frame::Fst{});
  internal("fst of a non-pair");
}

ValuePtr Normalizer::do_snd(const ValuePtr& p) const {
  if (const auto* pr = p->as<val::Pair>()) return pr->second;
  if (is_neutral(p)) return push_frame(p, frame::Snd{});
  internal("snd of a non-pair");
}

ValuePtr Normalizer::do_natrec(const Closure& motive, const ValuePtr& zero_case, const Closure& succ_case,
                               const ValuePtr& n) const {
  if (n->is<val::Zero>()) return zero_case;
  if (const auto* s = n->as<val::Succ>()) {
    return apply(succ_case, {s->pred, do_natrec(motive, zero_case, succ_case, s->pred)});
  }
  if (is_neutral(n)) return push_frame(n, frame::NatRec{motive, zero_case, succ_case});
  internal("natrec on a non-numeral");
}

ValuePtr Normalizer::do_j(const ValuePtr& type, const ValuePtr& base, const Closure& motive,
                          const ValuePtr& refl_case, const ValuePtr& endpoint, const ValuePtr& path) const {
  if (path->is<val::Refl>() && options_.j_refl_beta) return refl_case;
  if (is_neutral(path) || path->is<val::QPath>() || path->is<val::Refl>()) {
    return push_frame(path, frame::J{type, base, motive, refl_case, endpoint});
  }
  internal("J on a non-path");
}

ValuePtr Normalizer::do_qelim(const ValuePtr& carrier, const ValuePtr& relation, const Closure& motive,
                              const Closure& point_case, const Closure& coh_case,
                              const ValuePtr& scrutinee) const {
  if (const auto* q = scrutinee->as<val::QMk>(); q && options_.qelim_point_beta) {
    return apply(point_case, {q->point});
  }
  if (is_neutral(scrutinee) || scrutinee->is<val::QMk>()) {
    return push_frame(scrutinee, frame::QElim{carrier, relation, motive, point_case, coh_case});
  }
  internal("qelim on a non-quotient value");
}

ValuePtr Normalizer::transport(const ValuePtr& carrier, const Closure& family, const ValuePtr& from,
                               const ValuePtr& to, const ValuePtr& path, const ValuePtr& u) const {
  Closure motive{family.env, shift(family.body, 1, 0), {family.names.at(0), "p"}};
  return do_j(carrier, from, motive, u, to, path);
}

ValuePtr Normalizer::relation_type(const ValuePtr& carrier) const {
  // carrier -> carrier -> U, with the carrier captured at level 0 of the closure environment.
  TermPtr inner = pi("y", var(1, "A"), universe(kAnyLevel));
  return make_value(val::Pi{"x", carrier, Closure{{carrier}, inner, {"x"}}});
}

ValuePtr Normalizer::qelim_coh_type(const ValuePtr& carrier, const ValuePtr& relation, const Closure& motive,
                                    const Closure& point_case, const ValuePtr& a, const ValuePtr& b,
                                    const ValuePtr& r) const {
  auto point = [&](const ValuePtr& x) { return make_value(val::QMk{carrier, relation, x}); };
  ValuePtr quotient = make_value(val::Quot{carrier, relation});
  ValuePtr path = make_value(val::QPath{carrier, relation, a, b, r});
  ValuePtr moved = transport(quotient, motive, point(a), point(b), path, apply(point_case, {a}));
  return make_value(val::Id{apply(motive, {point(b)}), moved, apply(point_case, {b})});
}

// ---------------------------------------------------------------------------------------------
// Types of neutrals

ValuePtr Normalizer::stuck_type(const ValuePtr& v) const {
  if (const auto* q = v->as<val::QPath>()) {
    ValuePtr quotient = make_value(val::Quot{q->carrier, q->relation});
    return make_value(val::Id{quotient, make_value(val::QMk{q->carrier, q->relation, q->lhs}),
                              make_value(val::QMk{q->carrier, q->relation, q->rhs})});
  }
  if (const auto* q = v->as<val::QMk>()) return make_value(val::Quot{q->carrier, q->relation});
  if (const auto* r = v->as<val::Refl>()) return make_value(val::Id{r->type, r->point, r->point});
  internal("unexpected stuck value");
}

ValuePtr Normalizer::head_type(const Locals& locals, const Head& head) const {
  return std::visit(overloaded{
                        [&](const VarHead& h) -> ValuePtr {
                          if (h.level >= locals.depth()) internal("variable level out of range");
                          return locals.types[h.level];
                        },
                        [&](const AxiomHead& h) -> ValuePtr {
                          const GlobalEntry* e = globals_.find(h.name);
                          if (!e) internal("unknown axiom " + h.name);
                          return e->type_value;
                        },
                        [&](const Stuck& s) -> ValuePtr { return stuck_type(s.value); },
                    },
                    head);
}

ValuePtr Normalizer::frame_type(const Locals&, const ValuePtr& prefix, const ValuePtr& prefix_type,
                                const Frame& f) const {
  return std::visit(overloaded{
                        [&](const frame::App& a) -> ValuePtr {
                          const auto* p = prefix_type->as<val::Pi>();
                          if (!p) internal("application frame on a non-function type");
                          return apply(p->codomain, {a.arg});
                        },
                        [&](const frame::Fst&) -> ValuePtr {
                          const auto* s = prefix_type->as<val::Sigma>();
                          if (!s) internal("fst frame on a non-pair type");
                          return s->first;
                        },
                        [&](const frame::Snd&) -> ValuePtr {
                          const auto* s = prefix_type->as<val::Sigma>();
                          if (!s) internal("snd frame on a non-pair type");
                          return apply(s->second, {do_fst(prefix)});
                        },
                        [&](const frame::NatRec& r) -> ValuePtr { return apply(r.motive, {prefix}); },
                        [&](const frame::J& j) -> ValuePtr { return apply(j.motive, {j.endpoint, prefix}); },
                        [&](const frame::QElim& q) -> ValuePtr { return apply(q.motive, {prefix}); },
                    },
                    f);
}

namespace {

ValuePtr head_value(const Head& head) {
  if (const auto* s = std::get_if<Stuck>(&head)) return s->value;
  return make_value(val::Neutral{head, {}});
}

}  // namespace

ValuePtr Normalizer::neutral_type(const Locals& locals, const val::Neutral& n) const {
  ValuePtr cur = head_value(n.head);
  ValuePtr ty = head_type(locals, n.head);
  for (const auto& f : n.spine) {
    ty = frame_type(locals, cur, ty, f);
    cur = push_frame(cur, f);
  }
  return ty;
}

// ---------------------------------------------------------------------------------------------
// Readback

TermPtr Normalizer::readback_type(const Locals& locals, const ValuePtr& type) const {
  const std::size_t depth = locals.depth();
  return std::visit(
      overloaded{
          [&](const val::Universe& u) -> TermPtr { return universe(u.level); },
          [&](const val::Pi& p) -> TermPtr {
            ValuePtr x = fresh_var(depth, p.name);
            return pi(p.name, readback_type(locals, p.domain),
                      readback_type(locals.extend(p.name, p.domain), apply(p.codomain, {x})));
          },
          [&](const val::Sigma& s) -> TermPtr {
            ValuePtr x = fresh_var(depth, s.name);
            return sigma(s.name, readback_type(locals, s.first),
                         readback_type(locals.extend(s.name, s.first), apply(s.second, {x})));
          },
          [&](const val::Nat&) -> TermPtr { return nat(); },
          [&](const val::Unit&) -> TermPtr { return unit_type(); },
          [&](const val::Id& i) -> TermPtr {
            return id_type(readback_type(locals, i.type), readback(locals, i.lhs, i.type),
                           readback(locals, i.rhs, i.type));
          },
          [&](const val::Quot& q) -> TermPtr {
            return make(node::Quot{readback_type(locals, q.carrier),
                                   readback(locals, q.relation, relation_type(q.carrier))});
          },
          [&](const val::Neutral& n) -> TermPtr { return readback_neutral(locals, n, nullptr); },
          [&](const auto&) -> TermPtr { internal("readback_type of a non-type"); },
      },
      type->node);
}

TermPtr Normalizer::readback(const Locals& locals, const ValuePtr& v, const ValuePtr& type) const {
  const std::size_t depth = locals.depth();
  if (const auto* p = type->as<val::Pi>()) {
    std::string name = p->name;
    if (const auto* l = v->as<val::Lam>()) name = l->name;
    ValuePtr x = fresh_var(depth, name);
    return lam(name, readback(locals.extend(name, p->domain), do_app(v, x), apply(p->codomain, {x})));
  }
  if (const auto* s = type->as<val::Sigma>()) {
    ValuePtr a = do_fst(v);
    return pair(readback(locals, a, s->first), readback(locals, do_snd(v), apply(s->second, {a})));
  }
  if (type->is<val::Unit>()) return star();
  if (type->is<val::Universe>()) return readback_type(locals, v);
  if (const auto* n = v->as<val::Neutral>()) return readback_neutral(locals, *n, nullptr);
  if (type->is<val::Nat>()) {
    if (v->is<val::Zero>()) return zero();
    if (const auto* s = v->as<val::Succ>()) return succ(readback(locals, s->pred, type));
  }
  if (const auto* i = type->as<val::Id>()) {
    if (const auto* r = v->as<val::Refl>()) {
      return refl(readback_type(locals, i->type), readback(locals, r->point, i->type));
    }
    if (const auto* q = v->as<val::QPath>()) {
      ValuePtr rel_ab = do_app(do_app(q->relation, q->lhs), q->rhs);
      return make(node::QPath{readback_type(locals, q->carrier),
                              readback(locals, q->relation, relation_type(q->carrier)),
                              readback(locals, q->lhs, q->carrier), readback(locals, q->rhs, q->carrier),
                              readback(locals, q->witness, rel_ab)});
    }
  }
  if (const auto* qt = type->as<val::Quot>()) {
    if (const auto* m = v->as<val::QMk>()) {
      return make(node::QMk{readback_type(locals, qt->carrier),
                            readback(locals, qt->relation, relation_type(qt->carrier)),
                            readback(locals, m->point, qt->carrier)});
    }
  }
  internal("readback: value does not inhabit its type");
}

TermPtr Normalizer::readback_neutral(const Locals& locals, const val::Neutral& n, ValuePtr* type_out) const {
  const std::size_t depth = locals.depth();
  TermPtr t = std::visit(overloaded{
                             [&](const VarHead& h) -> TermPtr { return var(depth - 1 - h.level, h.hint); },
                             [&](const AxiomHead& h) -> TermPtr { return ref(h.name); },
                             [&](const Stuck& s) -> TermPtr {
                               return readback(locals, s.value, stuck_type(s.value));
                             },
                         },
                         n.head);
  ValuePtr cur = head_value(n.head);
  ValuePtr ty = head_type(locals, n.head);
  for (const auto& f : n.spine) {
    t = std::visit(
        overloaded{
            [&](const frame::App& a) -> TermPtr {
              return app(t, readback(locals, a.arg, ty->as<val::Pi>()->domain));
            },
            [&](const frame::Fst&) -> TermPtr { return fst(t); },
            [&](const frame::Snd&) -> TermPtr { return snd(t); },
            [&](const frame::NatRec& r) -> TermPtr {
              ValuePtr natv = make_value(val::Nat{});
              const auto& kname = r.succ_case.names[0];
              const auto& rname = r.succ_case.names[1];
              ValuePtr k = fresh_var(depth, kname);
              Locals lk = locals.extend(kname, natv);
              ValuePtr pk = apply(r.motive, {k});
              ValuePtr rec = fresh_var(depth + 1, rname);
              TermPtr motive = readback_type(locals.extend(r.motive.names[0], natv),
                                             apply(r.motive, {fresh_var(depth, r.motive.names[0])}));
              TermPtr z = readback(locals, r.zero_case, apply(r.motive, {make_value(val::Zero{})}));
              TermPtr s = readback(lk.extend(rname, pk), apply(r.succ_case, {k, rec}),
                                   apply(r.motive, {make_value(val::Succ{k})}));
              return make(node::NatRec{Bound{r.motive.names, motive}, z, Bound{r.succ_case.names, s}, t});
            },
            [&](const frame::J& j) -> TermPtr {
              const auto& yname = j.motive.names[0];
              const auto& pname = j.motive.names[1];
              ValuePtr y = fresh_var(depth, yname);
              ValuePtr path_ty = make_value(val::Id{j.type, j.base, y});
              ValuePtr p = fresh_var(depth + 1, pname);
              TermPtr motive = readback_type(locals.extend(yname, j.type).extend(pname, path_ty),
                                             apply(j.motive, {y, p}));
              ValuePtr refl_base = make_value(val::Refl{j.type, j.base});
              return make(node::J{readback_type(locals, j.type), readback(locals, j.base, j.type),
                                  Bound{j.motive.names, motive},
                                  readback(locals, j.refl_case, apply(j.motive, {j.base, refl_base})),
                                  readback(locals, j.endpoint, j.type), t});
            },
            [&](const frame::QElim& q) -> TermPtr {
              ValuePtr quotient = make_value(val::Quot{q.carrier, q.relation});
              const auto& xname = q.motive.names[0];
              TermPtr motive = readback_type(locals.extend(xname, quotient),
                                             apply(q.motive, {fresh_var(depth, xname)}));
              const auto& aname = q.point_case.names[0];
              ValuePtr a = fresh_var(depth, aname);
              TermPtr pt = readback(locals.extend(aname, q.carrier), apply(q.point_case, {a}),
                                    apply(q.motive, {make_value(val::QMk{q.carrier, q.relation, a})}));
              const auto& cn = q.coh_case.names;
              ValuePtr ca = fresh_var(depth, cn[0]);
              ValuePtr cb = fresh_var(depth + 1, cn[1]);
              ValuePtr cr = fresh_var(depth + 2, cn[2]);
              ValuePtr rel_ab = do_app(do_app(q.relation, ca), cb);
              Locals lc = locals.extend(cn[0], q.carrier).extend(cn[1], q.carrier).extend(cn[2], rel_ab);
              TermPtr coh = readback(lc, apply(q.coh_case, {ca, cb, cr}),
                                     qelim_coh_type(q.carrier, q.relation, q.motive, q.point_case, ca, cb, cr));
              return make(node::QElim{readback_type(locals, q.carrier),
                                      readback(locals, q.relation, relation_type(q.carrier)),
                                      Bound{q.motive.names, motive}, Bound{q.point_case.names, pt},
                                      Bound{q.coh_case.names, coh}, t});
            },
        },
        f);
    ty = frame_type(locals, cur, ty, f);
    cur = push_frame(cur, f);
  }
  if (type_out) *type_out = ty;
  return t;
}

// ---------------------------------------------------------------------------------------------
// Conversion

bool Normalizer::convertible_types(const Locals& locals, const ValuePtr& a, const ValuePtr& b) const {
  if (a == b) return true;
  const std::size_t depth = locals.depth();
  if (const auto* ua = a->as<val::Universe>()) {
    const auto* ub = b->as<val::Universe>();
    return ub && ua->level == ub->level;
  }
  if (const auto* pa = a->as<val::Pi>()) {
    const auto* pb = b->as<val::Pi>();
    if (!pb || !convertible_types(locals, pa->domain, pb->domain)) return false;
    ValuePtr x = fresh_var(depth, pa->name);
    return convertible_types(locals.extend(pa->name, pa->domain), apply(pa->codomain, {x}),
                             apply(pb->codomain, {x}));
  }
  if (const auto* sa = a->as<val::Sigma>()) {
    const auto* sb = b->as<val::Sigma>();
    if (!sb || !convertible_types(locals, sa->first, sb->first)) return false;
    ValuePtr x = fresh_var(depth, sa->name);
    return convertible_types(locals.extend(sa->name, sa->first), apply(sa->second, {x}),
                             apply(sb->second, {x}));
  }
  if (a->is<val::Nat>()) return b->is<val::Nat>();
  if (a->is<val::Unit>()) return b->is<val::Unit>();
  if (const auto* ia = a->as<val::Id>()) {
    const auto* ib = b->as<val::Id>();
    return ib && convertible_types(locals, ia->type, ib->type) && convertible(locals, ia->lhs, ib->lhs, ia->type) &&
           convertible(locals, ia->rhs, ib->rhs, ia->type);
  }
  if (const auto* qa = a->as<val::Quot>()) {
    const auto* qb = b->as<val::Quot>();
    return qb && convertible_types(locals, qa->carrier, qb->carrier) &&
           convertible(locals, qa->relation, qb->relation, relation_type(qa->carrier));
  }
  if (const auto* na = a->as<val::Neutral>()) {
    const auto* nb = b->as<val::Neutral>();
    return nb && conv_neutral(locals, *na, *nb) != nullptr;
  }
  return false;
}

bool Normalizer::convertible(const Locals& locals, const ValuePtr& v, const ValuePtr& w,
                             const ValuePtr& type) const {
  if (v == w) return true;
  const std::size_t depth = locals.depth();
  if (const auto* p = type->as<val::Pi>()) {
    ValuePtr x = fresh_var(depth, p->name);
    return convertible(locals.extend(p->name, p->domain), do_app(v, x), do_app(w, x), apply(p->codomain, {x}));
  }
  if (const auto* s = type->as<val::Sigma>()) {
    ValuePtr a = do_fst(v);
    return convertible(locals, a, do_fst(w), s->first) &&
           convertible(locals, do_snd(v), do_snd(w), apply(s->second, {a}));
  }
  if (type->is<val::Unit>()) return true;
  if (type->is<val::Universe>()) return convertible_types(locals, v, w);

  const auto* nv = v->as<val::Neutral>();
  const auto* nw = w->as<val::Neutral>();
  if (nv || nw) return nv && nw && conv_neutral(locals, *nv, *nw) != nullptr;

  if (type->is<val::Nat>()) {
    if (v->is<val::Zero>()) return w->is<val::Zero>();
    const auto* sv = v->as<val::Succ>();
    const auto* sw = w->as<val::Succ>();
    return sv && sw && convertible(locals, sv->pred, sw->pred, type);
  }
  if (const auto* i = type->as<val::Id>()) {
    if (const auto* rv = v->as<val::Refl>()) {
      const auto* rw = w->as<val::Refl>();
      return rw && convertible(locals, rv->point, rw->point, i->type);
    }
    const auto* qv = v->as<val::QPath>();
    const auto* qw = w->as<val::QPath>();
    if (!qv || !qw) return false;
    if (!convertible_types(locals, qv->carrier, qw->carrier) ||
        !convertible(locals, qv->relation, qw->relation, relation_type(qv->carrier)) ||
        !convertible(locals, qv->lhs, qw->lhs, qv->carrier) || !convertible(locals, qv->rhs, qw->rhs, qv->carrier))
      return false;
    return convertible(locals, qv->witness, qw->witness, do_app(do_app(qv->relation, qv->lhs), qv->rhs));
  }
  if (const auto* q = type->as<val::Quot>()) {
    const auto* mv = v->as<val::QMk>();
    const auto* mw = w->as<val::QMk>();
    return mv && mw && convertible(locals, mv->point, mw->point, q->carrier);
  }
  return false;
}

ValuePtr Normalizer::conv_neutral(const Locals& locals, const val::Neutral& a, const val::Neutral& b) const {
  if (a.spine.size() != b.spine.size() || a.head.index() != b.head.index()) return nullptr;
  const std::size_t depth = locals.depth();
  bool heads_equal = std::visit(
      overloaded{
          [&](const VarHead& h) { return h.level == std::get<VarHead>(b.head).level; },
          [&](const AxiomHead& h) { return h.name == std::get<AxiomHead>(b.head).name; },
          [&](const Stuck& s) {
            const ValuePtr& other = std::get<Stuck>(b.head).value;
            if (s.value->node.index() != other->node.index()) return false;
            ValuePtr ty = stuck_type(s.value);
            if (!convertible_types(locals, ty, stuck_type(other))) return false;
            return convertible(locals, s.value, other, ty);
          },
      },
      a.head);
  if (!heads_equal) return nullptr;

  ValuePtr cur = head_value(a.head);
  ValuePtr ty = head_type(locals, a.head);
  for (std::size_t i = 0; i < a.spine.size(); ++i) {
    const Frame& fa = a.spine[i];
    const Frame& fb = b.spine[i];
    if (fa.index() != fb.index()) return nullptr;
    bool ok = std::visit(
        overloaded{
            [&](const frame::App& x) {
              return convertible(locals, x.arg, std::get<frame::App>(fb).arg, ty->as<val::Pi>()->domain);
            },
            [&](const frame::Fst&) { return true; },
            [&](const frame::Snd&) { return true; },
            [&](const frame::NatRec& x) {
              const auto& y = std::get<frame::NatRec>(fb);
              ValuePtr natv = make_value(val::Nat{});
              ValuePtr k = fresh_var(depth, x.succ_case.names[0]);
              Locals lk = locals.extend(x.succ_case.names[0], natv);
              if (!convertible_types(lk, apply(x.motive, {k}), apply(y.motive, {k}))) return false;
              if (!convertible(locals, x.zero_case, y.zero_case, apply(x.motive, {make_value(val::Zero{})})))
                return false;
              ValuePtr pk = apply(x.motive, {k});
              ValuePtr rec = fresh_var(depth + 1, x.succ_case.names[1]);
              return convertible(lk.extend(x.succ_case.names[1], pk), apply(x.succ_case, {k, rec}),
                                 apply(y.succ_case, {k, rec}), apply(x.motive, {make_value(val::Succ{k})}));
            },
            [&](const frame::J& x) {
              const auto& y = std::get<frame::J>(fb);
              if (!convertible_types(locals, x.type, y.type)) return false;
              if (!convertible(locals, x.base, y.base, x.type)) return false;
              ValuePtr yv = fresh_var(depth, x.motive.names[0]);
              ValuePtr path_ty = make_value(val::Id{x.type, x.base, yv});
              ValuePtr pv = fresh_var(depth + 1, x.motive.names[1]);
              Locals lm = locals.extend(x.motive.names[0], x.type).extend(x.motive.names[1], path_ty);
              if (!convertible_types(lm, apply(x.motive, {yv, pv}), apply(y.motive, {yv, pv}))) return false;
              ValuePtr refl_base = make_value(val::Refl{x.type, x.base});
              if (!convertible(locals, x.refl_case, y.refl_case, apply(x.motive, {x.base, refl_base})))
                return false;
              return convertible(locals, x.endpoint, y.endpoint, x.type);
            },
            [&](const frame::QElim& x) {
              const auto& y = std::get<frame::QElim>(fb);
              if (!convertible_types(locals, x.carrier, y.carrier)) return false;
              if (!convertible(locals, x.relation, y.relation, relation_type(x.carrier))) return false;
              ValuePtr quotient = make_value(val::Quot{x.carrier, x.relation});
              ValuePtr xv = fresh_var(depth, x.motive.names[0]);
              if (!convertible_types(locals.extend(x.motive.names[0], quotient), apply(x.motive, {xv}),
                                     apply(y.motive, {xv})))
                return false;
              ValuePtr av = fresh_var(depth, x.point_case.names[0]);
              if (!convertible(locals.extend(x.point_case.names[0], x.carrier), apply(x.point_case, {av}),
                               apply(y.point_case, {av}),
                               apply(x.motive, {make_value(val::QMk{x.carrier, x.relation, av})})))
                return false;
              const auto& cn = x.coh_case.names;
              ValuePtr ca = fresh_var(depth, cn[0]);
              ValuePtr cb = fresh_var(depth + 1, cn[1]);
              ValuePtr cr = fresh_var(depth + 2, cn[2]);
              ValuePtr rel_ab = do_app(do_app(x.relation, ca), cb);
              Locals lc = locals.extend(cn[0], x.carrier).extend(cn[1], x.carrier).extend(cn[2], rel_ab);
              return convertible(lc, apply(x.coh_case, {ca, cb, cr}), apply(y.coh_case, {ca, cb, cr}),
                                 qelim_coh_type(x.carrier, x.relation, x.motive, x.point_case, ca, cb, cr));
            },
        },
        fa);
    if (!ok) return nullptr;
    ty = frame_type(locals, cur, ty, fa);
    cur = push_frame(cur, fa);
  }
  return ty;
}

}  // namespace hitkernel
