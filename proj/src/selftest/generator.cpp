#include "hitkernel/generator.hpp"

namespace hitkernel {

using namespace node;

STypePtr stype_nat() { return std::make_shared<const SimpleType>(SimpleType{SimpleType::nat, nullptr, nullptr, 0}); }
STypePtr stype_unit() { return std::make_shared<const SimpleType>(SimpleType{SimpleType::unit, nullptr, nullptr, 0}); }
STypePtr stype_arrow(STypePtr a, STypePtr b) {
  return std::make_shared<const SimpleType>(SimpleType{SimpleType::arrow, std::move(a), std::move(b), 0});
}
STypePtr stype_prod(STypePtr a, STypePtr b) {
  return std::make_shared<const SimpleType>(SimpleType{SimpleType::prod, std::move(a), std::move(b), 0});
}
STypePtr stype_quot() { return std::make_shared<const SimpleType>(SimpleType{SimpleType::quot, nullptr, nullptr, 0}); }
STypePtr stype_path(unsigned point) {
  return std::make_shared<const SimpleType>(SimpleType{SimpleType::path, nullptr, nullptr, point});
}

bool same_type(const STypePtr& a, const STypePtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case SimpleType::arrow:
    case SimpleType::prod:
      return same_type(a->left, b->left) && same_type(a->right, b->right);
    case SimpleType::path:
      return a->point == b->point;
    default:
      return true;
  }
}

TermPtr unit_relation() { return lam("a", lam("b", unit_type())); }

namespace {

TermPtr quot_type() { return make(Quot{nat(), unit_relation()}); }
TermPtr qmk_nat(TermPtr a) { return make(QMk{nat(), unit_relation(), std::move(a)}); }

}  // namespace

TermPtr type_term(const STypePtr& t) {
  switch (t->kind) {
    case SimpleType::nat: return nat();
    case SimpleType::unit: return unit_type();
    case SimpleType::arrow: return arrow(type_term(t->left), type_term(t->right));
    case SimpleType::prod: return make(Sigma{type_term(t->left), Bound{{"_"}, type_term(t->right)}});
    case SimpleType::quot: return quot_type();
    case SimpleType::path: return id_type(nat(), numeral(t->point), numeral(t->point));
  }
  return nullptr;
}

TermPtr constant_qelim_coherence(const STypePtr& type, const TermPtr& c) {
  // Under binders (a, b, r); inside the motive also (y, p).
  TermPtr ty = type_term(type);
  TermPtr inner = make(J{quot_type(), qmk_nat(var(4, "a")), Bound{{"y", "p"}, ty}, shift(c, 5), var(1, "y"),
                         var(0, "p")});
  TermPtr motive = id_type(ty, inner, shift(c, 5));
  return make(J{quot_type(), qmk_nat(var(2, "a")), Bound{{"y", "p"}, motive}, refl(ty, shift(c, 3)),
                qmk_nat(var(1, "b")), make(QPath{nat(), unit_relation(), var(2, "a"), var(1, "b"), var(0, "r")})});
}

TermPtr qelim_coherence_type(const STypePtr& type, const TermPtr& pt) {
  TermPtr ty = type_term(type);
  TermPtr lifted = shift(pt, 3, 1);
  TermPtr pa = instantiate(lifted, {var(2, "a")});
  TermPtr pb = instantiate(lifted, {var(1, "b")});
  TermPtr transported = make(J{quot_type(), qmk_nat(var(2, "a")), Bound{{"y", "p"}, ty}, pa, qmk_nat(var(1, "b")),
                               make(QPath{nat(), unit_relation(), var(2, "a"), var(1, "b"), var(0, "r")})});
  return pi("a", nat(), pi("b", nat(), pi("r", unit_type(), id_type(ty, transported, pb))));
}

TermGenerator::TermGenerator(std::uint64_t seed, GenConfig config) : rng_(seed), config_(config) {}

unsigned TermGenerator::below(unsigned n) { return std::uniform_int_distribution<unsigned>(0, n - 1)(rng_); }

const char* TermGenerator::hint() {
  static const char* pool[] = {"x", "y", "z", "n", "f"};
  return pool[below(5)];
}

STypePtr TermGenerator::random_type(unsigned depth) {
  unsigned base = config_.nat_fragment ? 1 : 4;
  unsigned choice = depth == 0 ? below(base) : below(base + 2);
  if (config_.nat_fragment) {
    if (choice == 0) return stype_nat();
    return stype_arrow(random_type(depth - 1), random_type(depth - 1));
  }
  switch (choice) {
    case 0: return stype_nat();
    case 1: return stype_unit();
    case 2: return stype_quot();
    case 3: return stype_path(below(3));
    case 4: return stype_arrow(random_type(depth - 1), random_type(depth - 1));
    default: return stype_prod(random_type(depth - 1), random_type(depth - 1));
  }
}

TermPtr TermGenerator::variable(const std::vector<STypePtr>& ctx, const STypePtr& type) {
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (same_type(ctx[i], type)) candidates.push_back(i);
  }
  if (candidates.empty()) return nullptr;
  std::size_t pos = candidates[below(static_cast<unsigned>(candidates.size()))];
  return var(ctx.size() - 1 - pos, "v");
}

TermPtr TermGenerator::term(const std::vector<STypePtr>& ctx, const STypePtr& type, unsigned depth) {
  unsigned roll = below(10);
  if (roll < 2) {
    if (TermPtr v = variable(ctx, type)) return v;
  }
  if (depth > 0 && roll >= 5) {
    if (TermPtr e = elim(ctx, type, depth)) return e;
  }
  return intro(ctx, type, depth);
}

TermPtr TermGenerator::intro(const std::vector<STypePtr>& ctx, const STypePtr& type, unsigned depth) {
  unsigned next = depth == 0 ? 0 : depth - 1;
  switch (type->kind) {
    case SimpleType::nat:
      if (depth == 0 || below(3) == 0) return numeral(below(3));
      return succ(term(ctx, type, next));
    case SimpleType::unit:
      return star();
    case SimpleType::arrow: {
      auto inner = ctx;
      inner.push_back(type->left);
      return lam(hint(), term(inner, type->right, next), type_term(type->left));
    }
    case SimpleType::prod:
      return pair(term(ctx, type->left, next), term(ctx, type->right, next));
    case SimpleType::quot:
      return qmk_nat(term(ctx, stype_nat(), next));
    case SimpleType::path:
      return refl(nat(), numeral(type->point));
  }
  return nullptr;
}

TermPtr TermGenerator::elim(const std::vector<STypePtr>& ctx, const STypePtr& type, unsigned depth) {
  unsigned next = depth - 1;
  unsigned forms = config_.nat_fragment ? 3 : 7;
  switch (below(forms)) {
    case 0: {  // application
      STypePtr dom = random_type(1);
      return app(term(ctx, stype_arrow(dom, type), next), term(ctx, dom, next));
    }
    case 1: {  // beta redex
      STypePtr dom = random_type(1);
      auto inner = ctx;
      inner.push_back(dom);
      return app(lam(hint(), term(inner, type, next), type_term(dom)), term(ctx, dom, next));
    }
    case 2: {  // natrec with a constant motive
      auto inner = ctx;
      inner.push_back(stype_nat());
      inner.push_back(type);
      return make(NatRec{Bound{{"k"}, type_term(type)}, term(ctx, type, next), Bound{{"k", "r"}, term(inner, type, next)},
                         term(ctx, stype_nat(), next)});
    }
    case 3: {  // first projection
      return fst(term(ctx, stype_prod(type, random_type(1)), next));
    }
    case 4: {
      return snd(term(ctx, stype_prod(random_type(1), type), next));
    }
    case 5: {  // J over a path between equal numerals
      unsigned k = below(3);
      return make(J{nat(), numeral(k), Bound{{"y", "p"}, type_term(type)}, term(ctx, type, next), numeral(k),
                    term(ctx, stype_path(k), next)});
    }
    default: {  // qelim with a constant point case
      TermPtr c = term(ctx, type, next);
      return make(QElim{nat(), unit_relation(), Bound{{"q"}, type_term(type)}, Bound{{"a"}, shift(c, 1)},
                        Bound{{"a", "b", "r"}, constant_qelim_coherence(type, c)}, term(ctx, stype_quot(), next)});
    }
  }
}

}  // namespace hitkernel
