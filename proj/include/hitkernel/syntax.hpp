#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace hitkernel {

/// Source position range. Lines and columns are 1-based; a zero line means "no position".
struct Span {
  int file = 0;
  int start_line = 0;
  int start_col = 0;
  int end_line = 0;
  int end_col = 0;

  bool valid() const { return start_line > 0; }
  static Span merge(const Span& a, const Span& b);
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// A term under `names.size()` fresh binders. Names are display hints only.
struct Bound {
  std::vector<std::string> names;
  TermPtr body;
};

namespace node {

struct Var { std::size_t index; std::string hint; };
struct Universe { unsigned level; };
struct Pi { TermPtr domain; Bound codomain; };
struct Lam { TermPtr annotation; Bound body; };  // annotation may be null
struct App { TermPtr fn; TermPtr arg; };
struct Sigma { TermPtr first; Bound second; };
struct Pair { TermPtr first; TermPtr second; };
struct Fst { TermPtr pair; };
struct Snd { TermPtr pair; };
struct Nat {};
struct Zero {};
struct Succ { TermPtr pred; };
struct NatRec { Bound motive; TermPtr zero_case; Bound succ_case; TermPtr scrutinee; };
struct Unit {};
struct Star {};
struct Id { TermPtr type; TermPtr lhs; TermPtr rhs; };
struct Refl { TermPtr type; TermPtr point; };
struct J { TermPtr type; TermPtr base; Bound motive; TermPtr refl_case; TermPtr endpoint; TermPtr path; };
struct Quot { TermPtr carrier; TermPtr relation; };
struct QMk { TermPtr carrier; TermPtr relation; TermPtr point; };
struct QPath { TermPtr carrier; TermPtr relation; TermPtr lhs; TermPtr rhs; TermPtr witness; };
struct QElim {
  TermPtr carrier;
  TermPtr relation;
  Bound motive;      // x : quot carrier relation
  Bound point_case;  // a : carrier
  Bound coh_case;    // a b : carrier, r : relation a b
  TermPtr scrutinee;
};
struct Ref { std::string name; };

}  // namespace node

using TermNode = std::variant<node::Var, node::Universe, node::Pi, node::Lam, node::App, node::Sigma,
                              node::Pair, node::Fst, node::Snd, node::Nat, node::Zero, node::Succ,
                              node::NatRec, node::Unit, node::Star, node::Id, node::Refl, node::J,
                              node::Quot, node::QMk, node::QPath, node::QElim, node::Ref>;

struct Term {
  TermNode node;
  Span span;

  template <class T>
  const T* as() const { return std::get_if<T>(&node); }
  template <class T>
  bool is() const { return std::holds_alternative<T>(node); }
};

TermPtr make(TermNode node, Span span = {});

// Constructors used throughout the kernel and tests.
TermPtr var(std::size_t index, std::string hint = "x");
TermPtr universe(unsigned level);
TermPtr pi(std::string name, TermPtr domain, TermPtr codomain);
TermPtr arrow(TermPtr domain, TermPtr codomain);  // codomain is shifted past the binder
TermPtr lam(std::string name, TermPtr body, TermPtr annotation = nullptr);
TermPtr app(TermPtr fn, TermPtr arg);
TermPtr app(TermPtr fn, std::initializer_list<TermPtr> args);
TermPtr sigma(std::string name, TermPtr first, TermPtr second);
TermPtr pair(TermPtr a, TermPtr b);
TermPtr fst(TermPtr p);
TermPtr snd(TermPtr p);
TermPtr nat();
TermPtr zero();
TermPtr succ(TermPtr n);
TermPtr numeral(unsigned n);
TermPtr unit_type();
TermPtr star();
TermPtr id_type(TermPtr type, TermPtr lhs, TermPtr rhs);
TermPtr refl(TermPtr type, TermPtr point);
TermPtr ref(std::string name);

/// One child position of a term: the child and the number of binders it sits under.
struct Child {
  const TermPtr* term;
  std::size_t binders;
};

/// Children in a fixed order per constructor. Null annotations are included as null pointers.
std::vector<Child> children(const Term& t);

/// Rebuilds `t` with replaced children (same order and count as `children(t)`).
TermPtr with_children(const Term& t, const std::vector<TermPtr>& replaced);

/// Adds `amount` to every variable with index >= `cutoff`.
TermPtr shift(const TermPtr& t, std::ptrdiff_t amount, std::size_t cutoff = 0);

/// Replaces the `arguments.size()` innermost binders of `body`. arguments[0] is the outermost
/// of those binders, so for a body under (x, y), instantiate(body, {a, b}) sets x := a, y := b.
TermPtr instantiate(const TermPtr& body, const std::vector<TermPtr>& arguments);

/// Structural equality ignoring display-name hints and spans.
bool alpha_eq(const TermPtr& t, const TermPtr& u);

/// True iff every variable index is below `depth` plus its local binder count.
bool well_scoped(const TermPtr& t, std::size_t depth);

/// True iff variable `index` (relative to `t`'s root) occurs free in `t`.
bool occurs(const TermPtr& t, std::size_t index);

/// Global names referenced by `t`, in first-occurrence order.
std::vector<std::string> referenced_globals(const TermPtr& t);

/// Number of nodes, used for reporting and generator bounds.
std::size_t term_size(const TermPtr& t);

}  // namespace hitkernel
