#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "hitkernel/syntax.hpp"

namespace hitkernel {

struct Value;
using ValuePtr = std::shared_ptr<const Value>;

/// One value per enclosing binder, outermost first (index by de Bruijn level).
using Env = std::vector<ValuePtr>;

/// A term body awaiting `arity` arguments, together with the environment it was evaluated in.
struct Closure {
  Env env;
  TermPtr body;
  std::vector<std::string> names;

  std::size_t arity() const { return names.size(); }
};

struct VarHead { std::size_t level; std::string hint; };
struct AxiomHead { std::string name; };
/// A canonical value blocking an eliminator: a quotient path under J (there is no path
/// computation rule), or a point whose rule is switched off by EvalOptions.
struct Stuck { ValuePtr value; };
using Head = std::variant<VarHead, AxiomHead, Stuck>;

namespace frame {
struct App { ValuePtr arg; };
struct Fst {};
struct Snd {};
struct NatRec { Closure motive; ValuePtr zero_case; Closure succ_case; };
struct J { ValuePtr type; ValuePtr base; Closure motive; ValuePtr refl_case; ValuePtr endpoint; };
struct QElim { ValuePtr carrier; ValuePtr relation; Closure motive; Closure point_case; Closure coh_case; };
}  // namespace frame

using Frame = std::variant<frame::App, frame::Fst, frame::Snd, frame::NatRec, frame::J, frame::QElim>;

namespace val {
struct Universe { unsigned level; };
struct Pi { std::string name; ValuePtr domain; Closure codomain; };
struct Lam { std::string name; Closure body; };
struct Sigma { std::string name; ValuePtr first; Closure second; };
struct Pair { ValuePtr first; ValuePtr second; };
struct Nat {};
struct Zero {};
struct Succ { ValuePtr pred; };
struct Unit {};
struct Star {};
struct Id { ValuePtr type; ValuePtr lhs; ValuePtr rhs; };
struct Refl { ValuePtr type; ValuePtr point; };
struct Quot { ValuePtr carrier; ValuePtr relation; };
struct QMk { ValuePtr carrier; ValuePtr relation; ValuePtr point; };
struct QPath { ValuePtr carrier; ValuePtr relation; ValuePtr lhs; ValuePtr rhs; ValuePtr witness; };
struct Neutral { Head head; std::vector<Frame> spine; };
}  // namespace val

struct Value {
  std::variant<val::Universe, val::Pi, val::Lam, val::Sigma, val::Pair, val::Nat, val::Zero, val::Succ,
               val::Unit, val::Star, val::Id, val::Refl, val::Quot, val::QMk, val::QPath, val::Neutral>
      node;

  template <class T>
  const T* as() const { return std::get_if<T>(&node); }
  template <class T>
  bool is() const { return std::holds_alternative<T>(node); }
};

template <class T>
ValuePtr make_value(T v) {
  return std::make_shared<const Value>(Value{std::move(v)});
}

enum class DeclKind { definition, axiom };

struct GlobalEntry {
  std::string name;
  DeclKind kind = DeclKind::definition;
  TermPtr type;
  TermPtr body;  // null for axioms
  ValuePtr type_value;
  ValuePtr value;  // definition value, or the neutral constant for axioms
  std::string file;
  Span span;
};

/// Append-only table of checked declarations.
class GlobalEnv {
 public:
  const GlobalEntry* find(const std::string& name) const;
  bool contains(const std::string& name) const { return find(name) != nullptr; }
  const GlobalEntry& add(GlobalEntry entry);
  const std::vector<std::string>& order() const { return order_; }

 private:
  std::unordered_map<std::string, std::unique_ptr<GlobalEntry>> entries_;
  std::vector<std::string> order_;
};

/// Names and types of the local variables in scope, outermost first.
struct Locals {
  std::vector<std::string> names;
  std::vector<ValuePtr> types;

  std::size_t depth() const { return types.size(); }
  Locals extend(std::string name, ValuePtr type) const;
};

/// The neutral value standing for the variable at `level`.
ValuePtr fresh_var(std::size_t level, std::string hint = "x");

}  // namespace hitkernel
