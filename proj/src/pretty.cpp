#include "hitkernel/pretty.hpp"

#include <set>

#include "hitkernel/elaborator.hpp"
#include "hitkernel/lexer.hpp"

namespace hitkernel {

namespace {

enum Prec { kLow = 0, kProd = 1, kApp = 2, kAtom = 3 };

class Printer {
 public:
  Printer(const std::vector<std::string>& scope, const TermPtr& root, PrettyOptions options)
      : names_(scope), options_(options) {
    for (auto& g : referenced_globals(root)) globals_.insert(g);
  }

  std::string go(const TermPtr& t, int prec) {
    int own = kAtom;
    std::string s = render(*t, own);
    return own < prec ? "(" + s + ")" : s;
  }

 private:
  bool taken(const std::string& n) const {
    if (is_keyword(n) || is_builtin_name(n) || globals_.count(n)) return true;
    for (const auto& m : names_) {
      if (m == n) return true;
    }
    return false;
  }

  std::string fresh(const std::string& hint, bool used) {
    if (!used) return "_";
    std::string base = hint.empty() || hint == "_" ? "x" : hint;
    if (!taken(base)) return base;
    for (int i = 1;; ++i) {
      std::string candidate = base + std::to_string(i);
      if (!taken(candidate)) return candidate;
    }
  }

  template <class F>
  std::string under(const std::vector<std::string>& names, F&& body) {
    names_.insert(names_.end(), names.begin(), names.end());
    std::string s = body();
    names_.resize(names_.size() - names.size());
    return s;
  }

  // A binding argument of a primitive, always written as `fun names => body`.
  std::string bound(const Bound& b) {
    std::vector<std::string> names;
    const std::size_t k = b.names.size();
    std::string head = "(fun";
    for (std::size_t i = 0; i < k; ++i) {
      names.push_back(fresh(b.names[i], occurs(b.body, k - 1 - i)));
      names_.push_back(names.back());
      head += " " + names.back();
    }
    names_.resize(names_.size() - k);
    return head + " => " + under(names, [&] { return go(b.body, kLow); }) + ")";
  }

  std::string prim(const char* name, std::initializer_list<std::string> args, int& own) {
    own = kApp;
    std::string s = name;
    for (const auto& a : args) s += " " + a;
    return s;
  }

  std::string atom(const TermPtr& t) { return go(t, kAtom); }

  std::string render(const Term& t, int& own) {
    using namespace node;
    own = kAtom;
    if (const auto* v = t.as<Var>()) {
      if (v->index < names_.size()) return names_[names_.size() - 1 - v->index];
      return "?" + std::to_string(v->index - names_.size());
    }
    if (const auto* u = t.as<Universe>()) return "Type" + std::to_string(u->level);
    if (t.is<Nat>()) return "Nat";
    if (t.is<Unit>()) return "Unit";
    if (t.is<Star>()) return "star";
    if (t.is<Zero>()) return options_.numerals ? "0" : "zero";
    if (const auto* r = t.as<Ref>()) return r->name;
    if (const auto* s = t.as<Succ>()) {
      if (options_.numerals) {
        unsigned long long n = 1;
        const Term* cur = s->pred.get();
        while (const auto* next = cur->as<Succ>()) {
          ++n;
          cur = next->pred.get();
        }
        if (cur->is<Zero>()) return std::to_string(n);
      }
      return prim("succ", {atom(s->pred)}, own);
    }
    if (t.is<Pi>()) return binders<Pi>(t, "->", own);
    if (t.is<Sigma>()) return binders<Sigma>(t, "*", own);
    if (t.is<Lam>()) {
      own = kLow;
      std::string s = "fun";
      std::vector<std::string> bound_names;
      const Term* cur = &t;
      TermPtr body;
      while (const auto* l = cur->as<Lam>()) {
        std::string n = fresh(l->body.names[0], occurs(l->body.body, 0));
        if (l->annotation) {
          s += " (" + n + " : " + go(l->annotation, kLow) + ")";
        } else {
          s += " " + n;
        }
        names_.push_back(n);
        bound_names.push_back(n);
        body = l->body.body;
        cur = body.get();
      }
      s += " => " + go(body, kLow);
      names_.resize(names_.size() - bound_names.size());
      return s;
    }
    if (t.is<App>()) {
      own = kApp;
      std::vector<const TermPtr*> args;
      const Term* cur = &t;
      const TermPtr* head = nullptr;
      while (const auto* a = cur->as<App>()) {
        args.push_back(&a->arg);
        head = &a->fn;
        cur = a->fn.get();
      }
      std::string s = go(*head, kApp);
      for (std::size_t i = args.size(); i-- > 0;) s += " " + atom(*args[i]);
      return s;
    }
    if (const auto* p = t.as<Pair>()) return "(" + go(p->first, kLow) + ", " + go(p->second, kLow) + ")";
    if (const auto* p = t.as<Fst>()) return prim("fst", {atom(p->pair)}, own);
    if (const auto* p = t.as<Snd>()) return prim("snd", {atom(p->pair)}, own);
    if (const auto* r = t.as<NatRec>()) {
      return prim("natrec", {bound(r->motive), atom(r->zero_case), bound(r->succ_case), atom(r->scrutinee)}, own);
    }
    if (const auto* i = t.as<Id>()) return prim("Id", {atom(i->type), atom(i->lhs), atom(i->rhs)}, own);
    if (const auto* r = t.as<Refl>()) return prim("refl", {atom(r->type), atom(r->point)}, own);
    if (const auto* j = t.as<J>()) {
      return prim("J", {atom(j->type), atom(j->base), bound(j->motive), atom(j->refl_case), atom(j->endpoint),
                        atom(j->path)},
                  own);
    }
    if (const auto* q = t.as<Quot>()) return prim("quot", {atom(q->carrier), atom(q->relation)}, own);
    if (const auto* q = t.as<QMk>()) return prim("qmk", {atom(q->carrier), atom(q->relation), atom(q->point)}, own);
    if (const auto* q = t.as<QPath>()) {
      return prim("qpath", {atom(q->carrier), atom(q->relation), atom(q->lhs), atom(q->rhs), atom(q->witness)},
                  own);
    }
    const auto& q = std::get<QElim>(t.node);
    return prim("qelim", {atom(q.carrier), atom(q.relation), bound(q.motive), bound(q.point_case),
                          bound(q.coh_case), atom(q.scrutinee)},
                own);
  }

  // Pi and Sigma share layout: `(x : A) (y : B) op C` when dependent, `A op B` otherwise.
  template <class Node>
  std::string binders(const Term& t, const char* op, int& own) {
    const auto& n = std::get<Node>(t.node);
    auto domain = [](const Node& m) -> const TermPtr& {
      if constexpr (std::is_same_v<Node, node::Pi>) return m.domain; else return m.first;
    };
    auto codomain = [](const Node& m) -> const Bound& {
      if constexpr (std::is_same_v<Node, node::Pi>) return m.codomain; else return m.second;
    };
    if (!occurs(codomain(n).body, 0)) {
      bool arrow = std::is_same_v<Node, node::Pi>;
      own = arrow ? kLow : kProd;
      std::string lhs = go(domain(n), arrow ? kProd : kApp);
      return lhs + " " + op + " " + under({"_"}, [&] { return go(codomain(n).body, arrow ? kLow : kProd); });
    }
    own = kLow;
    std::string s;
    std::size_t pushed = 0;
    const Node* cur = &n;
    TermPtr rest;
    while (cur) {
      std::string name = fresh(codomain(*cur).names[0], true);
      s += (s.empty() ? "(" : " (") + name + " : " + go(domain(*cur), kLow) + ")";
      names_.push_back(name);
      ++pushed;
      rest = codomain(*cur).body;
      cur = rest->template as<Node>();
      if (cur && !occurs(codomain(*cur).body, 0)) cur = nullptr;
    }
    s += std::string(" ") + op + " " + go(rest, kLow);
    names_.resize(names_.size() - pushed);
    return s;
  }

  std::vector<std::string> names_;
  std::set<std::string> globals_;
  PrettyOptions options_;
};

}  // namespace

std::string pretty(const TermPtr& t, const std::vector<std::string>& scope, PrettyOptions options) {
  return Printer(scope, t, options).go(t, kLow);
}

}  // namespace hitkernel
