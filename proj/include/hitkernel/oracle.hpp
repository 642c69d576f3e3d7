#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hitkernel/syntax.hpp"

// Reference implementation over named variables, written independently of the de Bruijn
// machinery: capture-avoiding substitution with explicit renaming, alpha-equivalence by
// binder correspondence, and a naive substitution interpreter for the Nat fragment.
namespace hitkernel::oracle {

struct Named;
using NamedPtr = std::shared_ptr<const Named>;

/// A child position: the names it binds (simultaneously) and the child itself.
struct Part {
  std::vector<std::string> binders;
  NamedPtr body;  // null for absent lambda annotations
};

struct Named {
  std::string op;    // "var", "lam", "app", "succ", "natrec", ...
  std::string name;  // variable name, global name, universe level
  std::vector<Part> parts;
};

NamedPtr nvar(std::string name);
NamedPtr node(std::string op, std::vector<Part> parts, std::string name = {});

/// Converts a core term whose free variables are named by `scope` (outermost first). Binder
/// names may shadow outer names that the binder's body does not mention.
NamedPtr from_core(const TermPtr& t, const std::vector<std::string>& scope);

std::set<std::string> free_names(const NamedPtr& t);
NamedPtr substitute(const NamedPtr& t, const std::string& name, const NamedPtr& value);
bool alpha_equal(const NamedPtr& a, const NamedPtr& b);
std::string show(const NamedPtr& t);

/// Reduces a closed Nat-fragment program (lam, app, zero, succ, natrec) to a number by
/// repeated substitution. Returns nullopt when `fuel` steps run out or the value exceeds `cap`.
std::optional<unsigned long> evaluate_nat(const NamedPtr& t, std::size_t fuel, unsigned long cap);

}  // namespace hitkernel::oracle
