#pragma once

#include <string>
#include <vector>

#include "hitkernel/syntax.hpp"

namespace hitkernel {

struct PrettyOptions {
  bool numerals = true;  // print Succ^n(Zero) as `n` rather than `succ (... zero)`
};

/// Renders a term in surface syntax. `scope` names the free variables, outermost first.
/// Binder names are freshened where needed, so the output re-elaborates to an alpha-equal
/// term in the same scope.
std::string pretty(const TermPtr& t, const std::vector<std::string>& scope = {}, PrettyOptions options = {});

}  // namespace hitkernel
