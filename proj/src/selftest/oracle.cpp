#include "hitkernel/oracle.hpp"

#include <map>
#include <stdexcept>

namespace hitkernel::oracle {

namespace {

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

NamedPtr rename(const NamedPtr& t, const std::string& from, const std::string& to) {
  return substitute(t, from, nvar(to));
}

std::string fresh_avoiding(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string candidate = base + "'" + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

class Converter {
 public:
  explicit Converter(std::vector<std::string> scope) : scope_(std::move(scope)) {}

  NamedPtr convert(const TermPtr& t) {
    if (!t) return nullptr;
    return std::visit(
        overloaded{
            [&](const node::Var& v) -> NamedPtr {
              if (v.index >= scope_.size()) throw std::logic_error("oracle: variable out of scope");
              return nvar(scope_[scope_.size() - 1 - v.index]);
            },
            [&](const node::Universe& u) { return node("type", {}, std::to_string(u.level)); },
            [&](const node::Pi& p) { return node("pi", {plain(p.domain), bound(p.codomain)}); },
            [&](const node::Lam& l) { return node("lam", {plain(l.annotation), bound(l.body)}); },
            [&](const node::App& a) { return node("app", {plain(a.fn), plain(a.arg)}); },
            [&](const node::Sigma& s) { return node("sigma", {plain(s.first), bound(s.second)}); },
            [&](const node::Pair& p) { return node("pair", {plain(p.first), plain(p.second)}); },
            [&](const node::Fst& f) { return node("fst", {plain(f.pair)}); },
            [&](const node::Snd& s) { return node("snd", {plain(s.pair)}); },
            [&](const node::Nat&) { return node("nat", {}); },
            [&](const node::Zero&) { return node("zero", {}); },
            [&](const node::Succ& s) { return node("succ", {plain(s.pred)}); },
            [&](const node::NatRec& r) {
              return node("natrec", {bound(r.motive), plain(r.zero_case), bound(r.succ_case), plain(r.scrutinee)});
            },
            [&](const node::Unit&) { return node("unit", {}); },
            [&](const node::Star&) { return node("star", {}); },
            [&](const node::Id& i) { return node("id", {plain(i.type), plain(i.lhs), plain(i.rhs)}); },
            [&](const node::Refl& r) { return node("refl", {plain(r.type), plain(r.point)}); },
            [&](const node::J& j) {
              return node("J", {plain(j.type), plain(j.base), bound(j.motive), plain(j.refl_case), plain(j.endpoint),
                                plain(j.path)});
            },
            [&](const node::Quot& q) { return node("quot", {plain(q.carrier), plain(q.relation)}); },
            [&](const node::QMk& q) { return node("qmk", {plain(q.carrier), plain(q.relation), plain(q.point)}); },
            [&](const node::QPath& q) {
              return node("qpath", {plain(q.carrier), plain(q.relation), plain(q.lhs), plain(q.rhs), plain(q.witness)});
            },
            [&](const node::QElim& q) {
              return node("qelim", {plain(q.carrier), plain(q.relation), bound(q.motive), bound(q.point_case),
                                    bound(q.coh_case), plain(q.scrutinee)});
            },
            [&](const node::Ref& r) { return node("ref", {}, r.name); },
        },
        t->node);
  }

 private:
  Part plain(const TermPtr& t) { return Part{{}, convert(t)}; }

  // Converts under placeholder names, then picks real names that do not capture anything the
  // body mentions. Reusing outer names is allowed (and intended) when the body ignores them.
  Part bound(const Bound& b) {
    std::vector<std::string> placeholders;
    for (std::size_t i = 0; i < b.names.size(); ++i) {
      placeholders.push_back("#" + std::to_string(counter_++));
      scope_.push_back(placeholders.back());
    }
    NamedPtr body = convert(b.body);
    scope_.resize(scope_.size() - b.names.size());

    std::set<std::string> avoid = free_names(body);
    std::vector<std::string> chosen;
    for (std::size_t i = 0; i < placeholders.size(); ++i) {
      avoid.erase(placeholders[i]);
      std::string base = b.names[i].empty() || b.names[i] == "_" ? "x" : b.names[i];
      std::string name = fresh_avoiding(base, avoid);
      avoid.insert(name);
      body = rename(body, placeholders[i], name);
      chosen.push_back(name);
    }
    return Part{chosen, body};
  }

  std::vector<std::string> scope_;
  std::size_t counter_ = 0;
};

struct OutOfFuel {};

class Interpreter {
 public:
  explicit Interpreter(std::size_t fuel) : fuel_(fuel) {}

  NamedPtr whnf(NamedPtr t) {
    for (;;) {
      if (fuel_ == 0) throw OutOfFuel{};
      --fuel_;
      if (t->op == "app") {
        NamedPtr fn = whnf(t->parts[0].body);
        if (fn->op != "lam") return node("app", {Part{{}, fn}, t->parts[1]});
        const Part& body = fn->parts[1];
        t = substitute(body.body, body.binders[0], t->parts[1].body);
        continue;
      }
      if (t->op == "natrec") {
        NamedPtr n = whnf(t->parts[3].body);
        if (n->op == "zero") {
          t = t->parts[1].body;
          continue;
        }
        if (n->op == "succ") {
          NamedPtr pred = n->parts[0].body;
          NamedPtr rec = node("natrec", {t->parts[0], t->parts[1], t->parts[2], Part{{}, pred}});
          const Part& step = t->parts[2];
          t = substitute(substitute(step.body, step.binders[0], pred), step.binders[1], rec);
          continue;
        }
        return node("natrec", {t->parts[0], t->parts[1], t->parts[2], Part{{}, n}});
      }
      return t;
    }
  }

 private:
  std::size_t fuel_;
};

}  // namespace

NamedPtr nvar(std::string name) { return std::make_shared<const Named>(Named{"var", std::move(name), {}}); }

NamedPtr node(std::string op, std::vector<Part> parts, std::string name) {
  return std::make_shared<const Named>(Named{std::move(op), std::move(name), std::move(parts)});
}

NamedPtr from_core(const TermPtr& t, const std::vector<std::string>& scope) { return Converter(scope).convert(t); }

std::set<std::string> free_names(const NamedPtr& t) {
  std::set<std::string> out;
  if (!t) return out;
  if (t->op == "var") {
    out.insert(t->name);
    return out;
  }
  for (const auto& p : t->parts) {
    for (const auto& n : free_names(p.body)) {
      bool bound = false;
      for (const auto& b : p.binders) bound = bound || b == n;
      if (!bound) out.insert(n);
    }
  }
  return out;
}

NamedPtr substitute(const NamedPtr& t, const std::string& name, const NamedPtr& value) {
  if (!t) return t;
  if (t->op == "var") return t->name == name ? value : t;
  std::set<std::string> value_free = free_names(value);
  std::vector<Part> parts;
  for (const auto& p : t->parts) {
    bool shadowed = false;
    for (const auto& b : p.binders) shadowed = shadowed || b == name;
    if (shadowed || !free_names(p.body).count(name)) {
      parts.push_back(p);
      continue;
    }
    Part renamed = p;
    for (auto& b : renamed.binders) {
      if (!value_free.count(b)) continue;
      std::set<std::string> avoid = value_free;
      for (const auto& n : free_names(renamed.body)) avoid.insert(n);
      for (const auto& other : renamed.binders) avoid.insert(other);
      avoid.insert(name);
      std::string fresh = fresh_avoiding(b, avoid);
      renamed.body = substitute(renamed.body, b, nvar(fresh));
      b = fresh;
    }
    renamed.body = substitute(renamed.body, name, value);
    parts.push_back(std::move(renamed));
  }
  return node(t->op, std::move(parts), t->name);
}

namespace {

// Binder correspondence: each side maps its bound names to a shared depth marker.
bool alpha_rec(const NamedPtr& a, const NamedPtr& b, std::vector<std::pair<std::string, std::string>>& bound) {
  if (!a || !b) return !a && !b;
  if (a->op != b->op) return false;
  if (a->op == "var") {
    for (auto it = bound.rbegin(); it != bound.rend(); ++it) {
      bool left = it->first == a->name, right = it->second == b->name;
      if (left || right) return left && right;
    }
    return a->name == b->name;
  }
  if (a->name != b->name || a->parts.size() != b->parts.size()) return false;
  for (std::size_t i = 0; i < a->parts.size(); ++i) {
    const Part& p = a->parts[i];
    const Part& q = b->parts[i];
    if (p.binders.size() != q.binders.size()) return false;
    for (std::size_t k = 0; k < p.binders.size(); ++k) bound.emplace_back(p.binders[k], q.binders[k]);
    bool ok = alpha_rec(p.body, q.body, bound);
    bound.resize(bound.size() - p.binders.size());
    if (!ok) return false;
  }
  return true;
}

}  // namespace

bool alpha_equal(const NamedPtr& a, const NamedPtr& b) {
  std::vector<std::pair<std::string, std::string>> bound;
  return alpha_rec(a, b, bound);
}

std::string show(const NamedPtr& t) {
  if (!t) return "_";
  if (t->op == "var") return t->name;
  std::string out = "(" + t->op;
  if (!t->name.empty()) out += ":" + t->name;
  for (const auto& p : t->parts) {
    out += " ";
    if (!p.binders.empty()) {
      out += "[";
      for (std::size_t i = 0; i < p.binders.size(); ++i) out += (i ? " " : "") + p.binders[i];
      out += "] ";
    }
    out += show(p.body);
  }
  return out + ")";
}

std::optional<unsigned long> evaluate_nat(const NamedPtr& t, std::size_t fuel, unsigned long cap) {
  Interpreter interp(fuel);
  try {
    unsigned long n = 0;
    NamedPtr cur = t;
    for (;;) {
      NamedPtr w = interp.whnf(cur);
      if (w->op == "zero") return n;
      if (w->op != "succ" || ++n > cap) return std::nullopt;
      cur = w->parts[0].body;
    }
  } catch (const OutOfFuel&) {
    return std::nullopt;
  }
}

}  // namespace hitkernel::oracle
