#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "hitkernel/syntax.hpp"

namespace hitkernel {

/// Non-dependent types used by the random term generator.
struct SimpleType;
using STypePtr = std::shared_ptr<const SimpleType>;

struct SimpleType {
  enum Kind { nat, unit, arrow, prod, quot, path } kind;
  STypePtr left, right;  // arrow and prod
  unsigned point = 0;    // path: Id Nat point point
};

STypePtr stype_nat();
STypePtr stype_unit();
STypePtr stype_arrow(STypePtr a, STypePtr b);
STypePtr stype_prod(STypePtr a, STypePtr b);
STypePtr stype_quot();  // quot Nat (fun _ _ => Unit)
STypePtr stype_path(unsigned point);

bool same_type(const STypePtr& a, const STypePtr& b);
/// Closed core term denoting the type.
TermPtr type_term(const STypePtr& t);
/// The relation `fun _ _ => Unit` on Nat used by the generated quotients.
TermPtr unit_relation();

struct GenConfig {
  unsigned max_depth = 4;
  bool nat_fragment = false;  // only Nat, arrows, lambdas, application and natrec
};

/// Type-directed generator of well-typed core terms. Every term it returns checks against the
/// requested type in the given context (outermost entry first).
class TermGenerator {
 public:
  TermGenerator(std::uint64_t seed, GenConfig config = {});

  STypePtr random_type(unsigned depth);
  TermPtr term(const std::vector<STypePtr>& ctx, const STypePtr& type, unsigned depth);
  TermPtr term(const std::vector<STypePtr>& ctx, const STypePtr& type) { return term(ctx, type, config_.max_depth); }

  std::mt19937_64& rng() { return rng_; }
  unsigned below(unsigned n);

 private:
  TermPtr intro(const std::vector<STypePtr>& ctx, const STypePtr& type, unsigned depth);
  TermPtr elim(const std::vector<STypePtr>& ctx, const STypePtr& type, unsigned depth);
  TermPtr variable(const std::vector<STypePtr>& ctx, const STypePtr& type);
  const char* hint();

  std::mt19937_64 rng_;
  GenConfig config_;
};

/// Coherence proof for `qelim` with a constant point case `c` (given in the scope outside the
/// three coherence binders) at result type `type`: transport in a constant family along
/// `qpath a b r`, by J.
TermPtr constant_qelim_coherence(const STypePtr& type, const TermPtr& c);

/// The kernel coherence type for qelim over quot Nat (fun _ _ => Unit) with constant motive
/// `type` and point case body `pt` (under one binder), stated under binders (a, b, r).
TermPtr qelim_coherence_type(const STypePtr& type, const TermPtr& pt);

}  // namespace hitkernel
