#include "hitkernel/elaborator.hpp"

#include <map>

namespace hitkernel {

namespace {

// Arity and per-argument binder counts of the primitive heads.
struct Primitive {
  std::vector<std::size_t> binders;
};

const std::map<std::string, Primitive>& primitives() {
  static const std::map<std::string, Primitive> table = {
      {"succ", {{0}}},
      {"fst", {{0}}},
      {"snd", {{0}}},
      {"refl", {{0, 0}}},
      {"Id", {{0, 0, 0}}},
      {"quot", {{0, 0}}},
      {"qmk", {{0, 0, 0}}},
      {"qpath", {{0, 0, 0, 0, 0}}},
      {"natrec", {{1, 0, 2, 0}}},
      {"J", {{0, 0, 2, 0, 0, 0}}},
      {"qelim", {{0, 0, 1, 1, 3, 0}}},
  };
  return table;
}

bool universe_name(const std::string& name, unsigned* level) {
  if (name.size() < 5 || name.compare(0, 4, "Type") != 0) return false;
  for (std::size_t i = 4; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') return false;
  }
  if (level) *level = name.size() > 9 ? ~0u : static_cast<unsigned>(std::stoul(name.substr(4)));
  return true;
}

struct FlatBinder {
  std::string name;
  SurfacePtr type;     // null for a bare lambda binder
  std::size_t offset;  // position within its `(x y : T)` group
  Span span;
};

std::vector<FlatBinder> flatten(const std::vector<SurfaceBinder>& groups) {
  std::vector<FlatBinder> out;
  for (const auto& g : groups) {
    for (std::size_t i = 0; i < g.names.size(); ++i) out.push_back(FlatBinder{g.names[i], g.type, i, g.span});
  }
  return out;
}

class Elaborator {
 public:
  explicit Elaborator(const GlobalLookup& globals) : globals_(globals) {}

  TermPtr term(const SurfacePtr& s, std::vector<std::string>& scope) {
    return std::visit([&](const auto& n) { return elab(n, *s, scope); }, s->node);
  }

  // Type of a flattened binder: elaborated where its group starts, then shifted past the
  // earlier names of the same group.
  TermPtr binder_type(const FlatBinder& b, std::vector<std::string>& scope) {
    if (!b.type) return nullptr;
    std::vector<std::string> outer(scope.begin(), scope.end() - static_cast<std::ptrdiff_t>(b.offset));
    return shift(term(b.type, outer), static_cast<std::ptrdiff_t>(b.offset));
  }

 private:
  template <class F>
  TermPtr under(std::vector<std::string>& scope, const std::string& name, F&& body) {
    scope.push_back(name);
    TermPtr r;
    try {
      r = body();
    } catch (...) {
      scope.pop_back();
      throw;
    }
    scope.pop_back();
    return r;
  }

  TermPtr lambdas(const std::vector<FlatBinder>& bs, std::size_t i, const SurfacePtr& body,
                  std::vector<std::string>& scope, const Span& span) {
    if (i == bs.size()) return term(body, scope);
    TermPtr annotation = binder_type(bs[i], scope);
    TermPtr inner = under(scope, bs[i].name, [&] { return lambdas(bs, i + 1, body, scope, span); });
    return make(node::Lam{annotation, Bound{{bs[i].name}, inner}}, Span::merge(bs[i].span, span));
  }

  template <class Node>
  TermPtr binders(const std::vector<FlatBinder>& bs, std::size_t i, const SurfacePtr& body,
                  std::vector<std::string>& scope, const Span& span) {
    if (i == bs.size()) return term(body, scope);
    TermPtr domain = binder_type(bs[i], scope);
    TermPtr inner = under(scope, bs[i].name, [&] { return binders<Node>(bs, i + 1, body, scope, span); });
    return make(Node{domain, Bound{{bs[i].name}, inner}}, Span::merge(bs[i].span, span));
  }

  TermPtr elab(const surface::Name& n, const SurfaceTerm& s, std::vector<std::string>& scope) {
    for (std::size_t i = scope.size(); i-- > 0;) {
      if (scope[i] == n.name && n.name != "_") return make(node::Var{scope.size() - 1 - i, n.name}, s.span);
    }
    if (n.name == "Nat") return make(node::Nat{}, s.span);
    if (n.name == "zero") return make(node::Zero{}, s.span);
    if (n.name == "Unit") return make(node::Unit{}, s.span);
    if (n.name == "star") return make(node::Star{}, s.span);
    unsigned level = 0;
    if (universe_name(n.name, &level)) {
      if (level > 1000) throw DiagnosticError(code::universe, "universe level of " + n.name + " is too large", s.span);
      return make(node::Universe{level}, s.span);
    }
    if (auto p = primitives().find(n.name); p != primitives().end()) {
      throw DiagnosticError(code::arity,
                            "'" + n.name + "' expects " + std::to_string(p->second.binders.size()) +
                                " arguments but got 0",
                            s.span);
    }
    if (n.name != "_" && globals_(n.name)) return make(node::Ref{n.name}, s.span);
    throw DiagnosticError(code::unbound, "unbound name '" + n.name + "'", s.span);
  }

  TermPtr elab(const surface::Number& n, const SurfaceTerm& s, std::vector<std::string>&) {
    TermPtr t = make(node::Zero{}, s.span);
    for (unsigned long long i = 0; i < n.value; ++i) t = make(node::Succ{t}, s.span);
    return t;
  }

  TermPtr elab(const surface::Fun& f, const SurfaceTerm& s, std::vector<std::string>& scope) {
    return lambdas(flatten(f.binders), 0, f.body, scope, s.span);
  }

  TermPtr elab(const surface::PiBinders& p, const SurfaceTerm& s, std::vector<std::string>& scope) {
    return binders<node::Pi>(flatten(p.binders), 0, p.body, scope, s.span);
  }

  TermPtr elab(const surface::SigmaBinders& p, const SurfaceTerm& s, std::vector<std::string>& scope) {
    return binders<node::Sigma>(flatten(p.binders), 0, p.body, scope, s.span);
  }

  TermPtr elab(const surface::Arrow& a, const SurfaceTerm& s, std::vector<std::string>& scope) {
    TermPtr dom = term(a.domain, scope);
    TermPtr cod = shift(term(a.codomain, scope), 1);
    return make(node::Pi{dom, Bound{{"_"}, cod}}, s.span);
  }

  TermPtr elab(const surface::Product& p, const SurfaceTerm& s, std::vector<std::string>& scope) {
    TermPtr first = term(p.first, scope);
    TermPtr second = shift(term(p.second, scope), 1);
    return make(node::Sigma{first, Bound{{"_"}, second}}, s.span);
  }

  TermPtr elab(const surface::Pair& p, const SurfaceTerm& s, std::vector<std::string>& scope) {
    return make(node::Pair{term(p.first, scope), term(p.second, scope)}, s.span);
  }

  TermPtr elab(const surface::Let& l, const SurfaceTerm&, std::vector<std::string>& scope) {
    term(l.type, scope);  // resolved for diagnostics only; the definition is substituted
    TermPtr value = term(l.value, scope);
    TermPtr body = under(scope, l.name, [&] { return term(l.body, scope); });
    return instantiate(body, {value});
  }

  TermPtr elab(const surface::Apply& a, const SurfaceTerm& s, std::vector<std::string>& scope) {
    std::size_t used = 0;
    TermPtr head;
    const auto* name = std::get_if<surface::Name>(&a.head->node);
    bool local = false;
    if (name) {
      for (const auto& n : scope) local = local || (n == name->name && n != "_");
    }
    auto prim = name && !local ? primitives().find(name->name) : primitives().end();
    if (prim != primitives().end()) {
      const auto& shape = prim->second.binders;
      if (a.args.size() < shape.size()) {
        throw DiagnosticError(code::arity,
                              "'" + name->name + "' expects " + std::to_string(shape.size()) + " arguments but got " +
                                  std::to_string(a.args.size()),
                              s.span);
      }
      used = shape.size();
      Span span = Span::merge(a.head->span, a.args[used - 1]->span);
      head = primitive(name->name, a.args, shape, scope, span);
    } else {
      head = term(a.head, scope);
    }
    for (std::size_t i = used; i < a.args.size(); ++i) {
      head = make(node::App{head, term(a.args[i], scope)}, Span::merge(a.head->span, a.args[i]->span));
    }
    return head;
  }

  // An argument in a binding position: `fun x y => body` binds directly; any other term `f`
  // is read as `fun x y => f x y`.
  Bound bound(const SurfacePtr& arg, std::size_t k, std::vector<std::string>& scope) {
    if (const auto* f = std::get_if<surface::Fun>(&arg->node)) {
      auto bs = flatten(f->binders);
      if (bs.size() >= k) {
        Bound b;
        for (std::size_t i = 0; i < k; ++i) b.names.push_back(bs[i].name);
        std::size_t base = scope.size();
        scope.insert(scope.end(), b.names.begin(), b.names.end());
        try {
          b.body = lambdas(bs, k, f->body, scope, arg->span);
        } catch (...) {
          scope.resize(base);
          throw;
        }
        scope.resize(base);
        return b;
      }
    }
    TermPtr fn = shift(term(arg, scope), static_cast<std::ptrdiff_t>(k));
    Bound b;
    for (std::size_t i = 0; i < k; ++i) {
      std::string hint = k == 1 ? "x" : std::string(1, static_cast<char>('a' + i));
      b.names.push_back(hint);
      fn = make(node::App{fn, make(node::Var{k - 1 - i, hint}, arg->span)}, arg->span);
    }
    b.body = fn;
    return b;
  }

  TermPtr primitive(const std::string& name, const std::vector<SurfacePtr>& args,
                    const std::vector<std::size_t>& shape, std::vector<std::string>& scope, const Span& span) {
    auto t = [&](std::size_t i) { return term(args[i], scope); };
    auto b = [&](std::size_t i) { return bound(args[i], shape[i], scope); };
    if (name == "succ") return make(node::Succ{t(0)}, span);
    if (name == "fst") return make(node::Fst{t(0)}, span);
    if (name == "snd") return make(node::Snd{t(0)}, span);
    if (name == "refl") return make(node::Refl{t(0), t(1)}, span);
    if (name == "Id") return make(node::Id{t(0), t(1), t(2)}, span);
    if (name == "quot") return make(node::Quot{t(0), t(1)}, span);
    if (name == "qmk") return make(node::QMk{t(0), t(1), t(2)}, span);
    if (name == "qpath") return make(node::QPath{t(0), t(1), t(2), t(3), t(4)}, span);
    if (name == "natrec") return make(node::NatRec{b(0), t(1), b(2), t(3)}, span);
    if (name == "J") return make(node::J{t(0), t(1), b(2), t(3), t(4), t(5)}, span);
    return make(node::QElim{t(0), t(1), b(2), b(3), b(4), t(5)}, span);
  }

  const GlobalLookup& globals_;
};

}  // namespace

bool is_builtin_name(const std::string& name) {
  return name == "Nat" || name == "zero" || name == "Unit" || name == "star" || name == "_" ||
         universe_name(name, nullptr) || primitives().count(name) > 0;
}

TermPtr elaborate_term(const SurfacePtr& t, const std::vector<std::string>& scope, const GlobalLookup& globals) {
  std::vector<std::string> names = scope;
  return Elaborator(globals).term(t, names);
}

CoreDecl elaborate_decl(const SurfaceDecl& d, const GlobalLookup& globals) {
  Elaborator el(globals);
  CoreDecl out;
  out.form = d.form;
  out.name = d.name;
  out.span = d.span;
  std::vector<std::string> scope;

  if (d.form == DeclForm::def || d.form == DeclForm::axiom) {
    if (is_builtin_name(d.name)) {
      throw DiagnosticError(code::duplicate, "'" + d.name + "' is a built-in name", d.span);
    }
    auto params = flatten(d.params);
    std::vector<TermPtr> types;
    for (const auto& p : params) {
      types.push_back(el.binder_type(p, scope));
      scope.push_back(p.name);
    }
    TermPtr type = el.term(d.type, scope);
    TermPtr body = d.body ? el.term(d.body, scope) : nullptr;
    for (std::size_t i = params.size(); i-- > 0;) {
      Span span = Span::merge(params[i].span, d.type->span);
      type = make(node::Pi{types[i], Bound{{params[i].name}, type}}, span);
      if (body) body = make(node::Lam{types[i], Bound{{params[i].name}, body}}, Span::merge(params[i].span, d.body->span));
    }
    out.type = type;
    out.body = body;
    return out;
  }

  for (const auto& b : flatten(d.telescope)) {
    out.telescope.emplace_back(b.name, el.binder_type(b, scope));
    scope.push_back(b.name);
  }
  if (d.body) out.body = el.term(d.body, scope);
  if (d.rhs) out.rhs = el.term(d.rhs, scope);
  if (d.type) out.type = el.term(d.type, scope);
  return out;
}

}  // namespace hitkernel
