#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hitkernel/diagnostic.hpp"
#include "hitkernel/normalizer.hpp"

namespace hitkernel {

inline constexpr unsigned kDefaultMaxLevel = 4;

/// Local typing context: a telescope of assumptions plus the evaluation environment that
/// maps each assumption to its neutral variable.
struct Context {
  Locals locals;
  Env env;

  std::size_t depth() const { return locals.depth(); }
  Context extend(const std::string& name, const ValuePtr& type) const;
};

enum class DeclForm { def, axiom, check, normalize, assert_defeq, assert_type };

/// An elaborated declaration. Directives may carry a telescope of neutral assumptions.
struct CoreDecl {
  DeclForm form = DeclForm::def;
  std::string name;
  std::vector<std::pair<std::string, TermPtr>> telescope;
  TermPtr type;  // def/axiom type; directive type annotation (may be null for assert_defeq)
  TermPtr body;  // def body; subject of check/normalize/assert_type; lhs of assert_defeq
  TermPtr rhs;   // assert_defeq only
  Span span;
  std::string file;
};

struct CheckerOptions {
  unsigned max_level = kDefaultMaxLevel;
  EvalOptions eval;
};

/// Bidirectional checker for the kernel language. Errors are reported by throwing
/// DiagnosticError with the span of the innermost located subterm.
class Checker {
 public:
  explicit Checker(GlobalEnv& globals, CheckerOptions options = {});

  ValuePtr infer(const Context& ctx, const TermPtr& t);
  void check(const Context& ctx, const TermPtr& t, const ValuePtr& expected);
  /// Checks that `t` is a type and returns its universe level.
  unsigned check_type(const Context& ctx, const TermPtr& t);

  /// readback(eval(t)) at the inferred type of `t`.
  TermPtr normalize(const Context& ctx, const TermPtr& t);

  /// Accepts iff `inferred` may be used where `expected` is required (cumulative universes).
  bool subtype(const Context& ctx, const ValuePtr& inferred, const ValuePtr& expected) const;

  /// Checks and installs a definition or axiom, or runs a directive. Returns the directive's
  /// report text (empty for definitions and axioms).
  std::string check_declaration(const CoreDecl& d);

  ValuePtr eval(const Context& ctx, const TermPtr& t) const { return nbe_.eval(ctx.env, t); }
  TermPtr quote_type(const Context& ctx, const ValuePtr& ty) const { return nbe_.readback_type(ctx.locals, ty); }

  const Normalizer& normalizer() const { return nbe_; }
  const GlobalEnv& globals() const { return globals_; }
  const CheckerOptions& options() const { return options_; }

 private:
  ValuePtr infer_inner(const Context& ctx, const TermPtr& t);
  void check_inner(const Context& ctx, const TermPtr& t, const ValuePtr& expected);
  unsigned expect_universe(const Context& ctx, const TermPtr& t, const ValuePtr& ty);
  void check_relation(const Context& ctx, const TermPtr& relation, const ValuePtr& carrier);
  Context build_telescope(const CoreDecl& d);
  std::string show(const Context& ctx, const TermPtr& t) const;
  std::string show_type(const Context& ctx, const ValuePtr& ty) const;
  [[noreturn]] void fail(const char* code, std::string message) const;

  GlobalEnv& globals_;
  CheckerOptions options_;
  Normalizer nbe_;
  std::vector<Span> spans_;
};

}  // namespace hitkernel
