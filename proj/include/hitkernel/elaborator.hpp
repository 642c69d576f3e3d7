#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hitkernel/parser.hpp"

namespace hitkernel {

/// Answers whether a global name is currently defined.
using GlobalLookup = std::function<bool(const std::string&)>;

/// True for names with built-in meaning (Nat, zero, TypeN, primitive heads, ...). Such names
/// cannot be declared as globals.
bool is_builtin_name(const std::string& name);

/// Resolves a surface term to a core term. `scope` lists local names outermost first.
/// Throws DiagnosticError (E-UNBOUND, E-ARITY).
TermPtr elaborate_term(const SurfacePtr& t, const std::vector<std::string>& scope, const GlobalLookup& globals);

/// Elaborates a declaration. `def f (x : A) : B := b` becomes `f : (x : A) -> B := fun (x : A) => b`.
CoreDecl elaborate_decl(const SurfaceDecl& d, const GlobalLookup& globals);

}  // namespace hitkernel
