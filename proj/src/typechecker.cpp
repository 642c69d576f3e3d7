#include "hitkernel/typechecker.hpp"

#include <algorithm>

#include "hitkernel/pretty.hpp"

namespace hitkernel {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

class SpanGuard {
 public:
  SpanGuard(std::vector<Span>& stack, const Span& span) : stack_(stack), pushed_(span.valid()) {
    if (pushed_) stack_.push_back(span);
  }
  ~SpanGuard() {
    if (pushed_) stack_.pop_back();
  }
  SpanGuard(const SpanGuard&) = delete;
  SpanGuard& operator=(const SpanGuard&) = delete;

 private:
  std::vector<Span>& stack_;
  bool pushed_;
};

ValuePtr universe_value(unsigned level) { return make_value(val::Universe{level}); }

}  // namespace

Context Context::extend(const std::string& name, const ValuePtr& type) const {
  Context out;
  out.locals = locals.extend(name, type);
  out.env.reserve(env.size() + 1);
  out.env.insert(out.env.end(), env.begin(), env.end());
  out.env.push_back(fresh_var(locals.depth(), name));
  return out;
}

Checker::Checker(GlobalEnv& globals, CheckerOptions options)
    : globals_(globals), options_(options), nbe_(globals, options.eval) {}

void Checker::fail(const char* code, std::string message) const {
  Span span = spans_.empty() ? Span{} : spans_.back();
  throw DiagnosticError(code, std::move(message), span);
}

std::string Checker::show(const Context& ctx, const TermPtr& t) const { return pretty(t, ctx.locals.names); }

std::string Checker::show_type(const Context& ctx, const ValuePtr& ty) const {
  return show(ctx, nbe_.readback_type(ctx.locals, ty));
}

bool Checker::subtype(const Context& ctx, const ValuePtr& inferred, const ValuePtr& expected) const {
  if (const auto* ui = inferred->as<val::Universe>()) {
    const auto* ue = expected->as<val::Universe>();
    return ue && ui->level <= ue->level;
  }
  if (const auto* pi_i = inferred->as<val::Pi>()) {
    const auto* pi_e = expected->as<val::Pi>();
    if (!pi_e || !nbe_.convertible_types(ctx.locals, pi_i->domain, pi_e->domain)) return false;
    Context inner = ctx.extend(pi_i->name, pi_i->domain);
    const ValuePtr& x = inner.env.back();
    return subtype(inner, nbe_.apply(pi_i->codomain, {x}), nbe_.apply(pi_e->codomain, {x}));
  }
  if (const auto* si = inferred->as<val::Sigma>()) {
    const auto* se = expected->as<val::Sigma>();
    if (!se || !subtype(ctx, si->first, se->first)) return false;
    Context inner = ctx.extend(si->name, si->first);
    const ValuePtr& x = inner.env.back();
    return subtype(inner, nbe_.apply(si->second, {x}), nbe_.apply(se->second, {x}));
  }
  return nbe_.convertible_types(ctx.locals, inferred, expected);
}

unsigned Checker::expect_universe(const Context& ctx, const TermPtr& t, const ValuePtr& ty) {
  if (const auto* u = ty->as<val::Universe>()) return u->level;
  fail(code::mismatch, "expected a type, but " + show(ctx, t) + " has type " + show_type(ctx, ty));
}

unsigned Checker::check_type(const Context& ctx, const TermPtr& t) {
  SpanGuard guard(spans_, t->span);
  return expect_universe(ctx, t, infer(ctx, t));
}

void Checker::check_relation(const Context& ctx, const TermPtr& relation, const ValuePtr& carrier) {
  TermPtr inner = pi("y", var(1, "A"), universe(options_.max_level));
  ValuePtr rel_ty = make_value(val::Pi{"x", carrier, Closure{{carrier}, inner, {"x"}}});
  check(ctx, relation, rel_ty);
}

ValuePtr Checker::infer(const Context& ctx, const TermPtr& t) {
  SpanGuard guard(spans_, t->span);
  return infer_inner(ctx, t);
}

void Checker::check(const Context& ctx, const TermPtr& t, const ValuePtr& expected) {
  SpanGuard guard(spans_, t->span);
  check_inner(ctx, t, expected);
}

ValuePtr Checker::infer_inner(const Context& ctx, const TermPtr& t) {
  using namespace node;
  const unsigned max_level = options_.max_level;
  auto ev = [&](const TermPtr& s) { return eval(ctx, s); };
  auto closure = [&](const Bound& b) { return Closure{ctx.env, b.body, b.names}; };

  return std::visit(
      overloaded{
          [&](const Var& v) -> ValuePtr {
            if (v.index >= ctx.depth()) fail(code::unbound, "variable index out of scope");
            return ctx.locals.types[ctx.depth() - 1 - v.index];
          },
          [&](const Universe& u) -> ValuePtr {
            if (u.level >= max_level) {
              fail(code::universe, "Type" + std::to_string(u.level) + " has no type below the maximum level Type" +
                                       std::to_string(max_level));
            }
            return universe_value(u.level + 1);
          },
          [&](const Pi& p) -> ValuePtr {
            unsigned i = check_type(ctx, p.domain);
            unsigned j = check_type(ctx.extend(p.codomain.names[0], ev(p.domain)), p.codomain.body);
            return universe_value(std::max(i, j));
          },
          [&](const Lam& l) -> ValuePtr {
            if (!l.annotation) fail(code::cannot_infer, "cannot infer the type of an unannotated function");
            check_type(ctx, l.annotation);
            ValuePtr dom = ev(l.annotation);
            Context inner = ctx.extend(l.body.names[0], dom);
            ValuePtr cod = infer(inner, l.body.body);
            TermPtr cod_term = nbe_.readback_type(inner.locals, cod);
            return make_value(val::Pi{l.body.names[0], dom, Closure{ctx.env, cod_term, l.body.names}});
          },
          [&](const App& a) -> ValuePtr {
            ValuePtr fty = infer(ctx, a.fn);
            const auto* p = fty->as<val::Pi>();
            if (!p) fail(code::not_function, show(ctx, a.fn) + " is not a function; it has type " + show_type(ctx, fty));
            check(ctx, a.arg, p->domain);
            return nbe_.apply(p->codomain, {ev(a.arg)});
          },
          [&](const Sigma& s) -> ValuePtr {
            unsigned i = check_type(ctx, s.first);
            unsigned j = check_type(ctx.extend(s.second.names[0], ev(s.first)), s.second.body);
            return universe_value(std::max(i, j));
          },
          [&](const Pair& p) -> ValuePtr {
            ValuePtr a = infer(ctx, p.first);
            ValuePtr b = infer(ctx, p.second);
            TermPtr b_term = shift(nbe_.readback_type(ctx.locals, b), 1);
            return make_value(val::Sigma{"_", a, Closure{ctx.env, b_term, {"_"}}});
          },
          [&](const Fst& f) -> ValuePtr {
            ValuePtr ty = infer(ctx, f.pair);
            const auto* s = ty->as<val::Sigma>();
            if (!s) fail(code::not_pair, show(ctx, f.pair) + " is not a pair; it has type " + show_type(ctx, ty));
            return s->first;
          },
          [&](const Snd& f) -> ValuePtr {
            ValuePtr ty = infer(ctx, f.pair);
            const auto* s = ty->as<val::Sigma>();
            if (!s) fail(code::not_pair, show(ctx, f.pair) + " is not a pair; it has type " + show_type(ctx, ty));
            return nbe_.apply(s->second, {nbe_.do_fst(ev(f.pair))});
          },
          [&](const Nat&) -> ValuePtr { return universe_value(0); },
          [&](const Zero&) -> ValuePtr { return make_value(val::Nat{}); },
          [&](const Succ& s) -> ValuePtr {
            ValuePtr natv = make_value(val::Nat{});
            check(ctx, s.pred, natv);
            return natv;
          },
          [&](const NatRec& r) -> ValuePtr {
            ValuePtr natv = make_value(val::Nat{});
            check(ctx, r.scrutinee, natv);
            Context km = ctx.extend(r.motive.names[0], natv);
            check_type(km, r.motive.body);
            Closure motive = closure(r.motive);
            check(ctx, r.zero_case, nbe_.apply(motive, {make_value(val::Zero{})}));
            Context ks = ctx.extend(r.succ_case.names[0], natv);
            const ValuePtr& k = ks.env.back();
            Context ksr = ks.extend(r.succ_case.names[1], nbe_.apply(motive, {k}));
            check(ksr, r.succ_case.body, nbe_.apply(motive, {make_value(val::Succ{k})}));
            return nbe_.apply(motive, {ev(r.scrutinee)});
          },
          [&](const Unit&) -> ValuePtr { return universe_value(0); },
          [&](const Star&) -> ValuePtr { return make_value(val::Unit{}); },
          [&](const Id& i) -> ValuePtr {
            unsigned level = check_type(ctx, i.type);
            ValuePtr ty = ev(i.type);
            check(ctx, i.lhs, ty);
            check(ctx, i.rhs, ty);
            return universe_value(level);
          },
          [&](const Refl& r) -> ValuePtr {
            check_type(ctx, r.type);
            ValuePtr ty = ev(r.type);
            check(ctx, r.point, ty);
            ValuePtr a = ev(r.point);
            return make_value(val::Id{ty, a, a});
          },
          [&](const J& j) -> ValuePtr {
            check_type(ctx, j.type);
            ValuePtr ty = ev(j.type);
            check(ctx, j.base, ty);
            ValuePtr base = ev(j.base);
            Context ky = ctx.extend(j.motive.names[0], ty);
            const ValuePtr& y = ky.env.back();
            Context kyp = ky.extend(j.motive.names[1], make_value(val::Id{ty, base, y}));
            check_type(kyp, j.motive.body);
            Closure motive = closure(j.motive);
            check(ctx, j.refl_case, nbe_.apply(motive, {base, make_value(val::Refl{ty, base})}));
            check(ctx, j.endpoint, ty);
            ValuePtr endpoint = ev(j.endpoint);
            check(ctx, j.path, make_value(val::Id{ty, base, endpoint}));
            return nbe_.apply(motive, {endpoint, ev(j.path)});
          },
          [&](const Quot& q) -> ValuePtr {
            unsigned level = check_type(ctx, q.carrier);
            check_relation(ctx, q.relation, ev(q.carrier));
            return universe_value(level);
          },
          [&](const QMk& q) -> ValuePtr {
            check_type(ctx, q.carrier);
            ValuePtr carrier = ev(q.carrier);
            check_relation(ctx, q.relation, carrier);
            check(ctx, q.point, carrier);
            return make_value(val::Quot{carrier, ev(q.relation)});
          },
          [&](const QPath& q) -> ValuePtr {
            check_type(ctx, q.carrier);
            ValuePtr carrier = ev(q.carrier);
            check_relation(ctx, q.relation, carrier);
            ValuePtr relation = ev(q.relation);
            check(ctx, q.lhs, carrier);
            check(ctx, q.rhs, carrier);
            ValuePtr a = ev(q.lhs);
            ValuePtr b = ev(q.rhs);
            check(ctx, q.witness, nbe_.do_app(nbe_.do_app(relation, a), b));
            ValuePtr quotient = make_value(val::Quot{carrier, relation});
            return make_value(val::Id{quotient, make_value(val::QMk{carrier, relation, a}),
                                      make_value(val::QMk{carrier, relation, b})});
          },
          [&](const QElim& q) -> ValuePtr {
            check_type(ctx, q.carrier);
            ValuePtr carrier = ev(q.carrier);
            check_relation(ctx, q.relation, carrier);
            ValuePtr relation = ev(q.relation);
            ValuePtr quotient = make_value(val::Quot{carrier, relation});
            check(ctx, q.scrutinee, quotient);

            check_type(ctx.extend(q.motive.names[0], quotient), q.motive.body);
            Closure motive = closure(q.motive);

            Context ka = ctx.extend(q.point_case.names[0], carrier);
            ValuePtr point_a = make_value(val::QMk{carrier, relation, ka.env.back()});
            check(ka, q.point_case.body, nbe_.apply(motive, {point_a}));
            Closure point_case = closure(q.point_case);

            const auto& cn = q.coh_case.names;
            Context c1 = ctx.extend(cn[0], carrier);
            Context c2 = c1.extend(cn[1], carrier);
            const ValuePtr& a = c1.env.back();
            const ValuePtr& b = c2.env.back();
            Context c3 = c2.extend(cn[2], nbe_.do_app(nbe_.do_app(relation, a), b));
            const ValuePtr& r = c3.env.back();
            check(c3, q.coh_case.body, nbe_.qelim_coh_type(carrier, relation, motive, point_case, a, b, r));

            return nbe_.apply(motive, {ev(q.scrutinee)});
          },
          [&](const Ref& r) -> ValuePtr {
            const GlobalEntry* e = globals_.find(r.name);
            if (!e) fail(code::unbound, "unknown name " + r.name);
            return e->type_value;
          },
      },
      t->node);
}

void Checker::check_inner(const Context& ctx, const TermPtr& t, const ValuePtr& expected) {
  if (const auto* l = t->as<node::Lam>()) {
    const auto* p = expected->as<val::Pi>();
    if (!p) fail(code::mismatch, "a function was given where " + show_type(ctx, expected) + " is expected");
    if (l->annotation) {
      check_type(ctx, l->annotation);
      ValuePtr ann = eval(ctx, l->annotation);
      if (!nbe_.convertible_types(ctx.locals, ann, p->domain)) {
        fail(code::mismatch, "binder annotation " + show(ctx, l->annotation) + " does not match the expected domain " +
                                 show_type(ctx, p->domain));
      }
    }
    Context inner = ctx.extend(l->body.names[0], p->domain);
    check(inner, l->body.body, nbe_.apply(p->codomain, {inner.env.back()}));
    return;
  }
  if (const auto* pr = t->as<node::Pair>()) {
    if (const auto* s = expected->as<val::Sigma>()) {
      check(ctx, pr->first, s->first);
      check(ctx, pr->second, nbe_.apply(s->second, {eval(ctx, pr->first)}));
      return;
    }
  }
  ValuePtr inferred = infer_inner(ctx, t);
  if (!subtype(ctx, inferred, expected)) {
    fail(code::mismatch, "type mismatch for " + show(ctx, t) + ": expected " + show_type(ctx, expected) +
                             ", but it has type " + show_type(ctx, inferred));
  }
}

TermPtr Checker::normalize(const Context& ctx, const TermPtr& t) {
  ValuePtr ty = infer(ctx, t);
  return nbe_.readback(ctx.locals, eval(ctx, t), ty);
}

Context Checker::build_telescope(const CoreDecl& d) {
  Context ctx;
  for (const auto& [name, type] : d.telescope) {
    check_type(ctx, type);
    ctx = ctx.extend(name, eval(ctx, type));
  }
  return ctx;
}

std::string Checker::check_declaration(const CoreDecl& d) {
  spans_.clear();
  SpanGuard guard(spans_, d.span);
  switch (d.form) {
    case DeclForm::def:
    case DeclForm::axiom: {
      if (globals_.contains(d.name)) fail(code::duplicate, "duplicate declaration of " + d.name);
      Context empty;
      check_type(empty, d.type);
      ValuePtr type_value = eval(empty, d.type);
      GlobalEntry entry;
      entry.name = d.name;
      entry.type = d.type;
      entry.type_value = type_value;
      entry.file = d.file;
      entry.span = d.span;
      if (d.form == DeclForm::def) {
        check(empty, d.body, type_value);
        entry.kind = DeclKind::definition;
        entry.body = d.body;
        entry.value = eval(empty, d.body);
      } else {
        entry.kind = DeclKind::axiom;
        entry.value = make_value(val::Neutral{AxiomHead{d.name}, {}});
      }
      globals_.add(std::move(entry));
      return {};
    }
    case DeclForm::check: {
      Context ctx = build_telescope(d);
      ValuePtr ty = infer(ctx, d.body);
      return show(ctx, d.body) + " : " + show_type(ctx, ty);
    }
    case DeclForm::normalize: {
      Context ctx = build_telescope(d);
      return show(ctx, normalize(ctx, d.body));
    }
    case DeclForm::assert_type: {
      Context ctx = build_telescope(d);
      check_type(ctx, d.type);
      ValuePtr ty = eval(ctx, d.type);
      try {
        check(ctx, d.body, ty);
      } catch (DiagnosticError& e) {
        auto& diag = e.diagnostic();
        diag.message = "#assert_type failed (" + diag.code + "): " + diag.message;
        diag.code = code::assert_failed;
        throw;
      }
      return "ok";
    }
    case DeclForm::assert_defeq: {
      Context ctx = build_telescope(d);
      ValuePtr ty;
      if (d.type) {
        check_type(ctx, d.type);
        ty = eval(ctx, d.type);
        check(ctx, d.body, ty);
      } else {
        ty = infer(ctx, d.body);
      }
      check(ctx, d.rhs, ty);
      ValuePtr lhs = eval(ctx, d.body);
      ValuePtr rhs = eval(ctx, d.rhs);
      if (!nbe_.convertible(ctx.locals, lhs, rhs, ty)) {
        fail(code::assert_failed, "#assert_defeq failed: " + show(ctx, nbe_.readback(ctx.locals, lhs, ty)) +
                                      " is not definitionally equal to " +
                                      show(ctx, nbe_.readback(ctx.locals, rhs, ty)));
      }
      return "ok";
    }
  }
  return {};
}

}  // namespace hitkernel
