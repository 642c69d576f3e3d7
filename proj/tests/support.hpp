#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hitkernel/driver.hpp"
#include "hitkernel/elaborator.hpp"
#include "hitkernel/lexer.hpp"
#include "hitkernel/parser.hpp"
#include "hitkernel/pretty.hpp"

namespace hitkernel::testing {

inline TermPtr core(const std::string& text, const std::vector<std::string>& scope = {},
                    const GlobalLookup& globals = [](const std::string&) { return false; }) {
  return elaborate_term(parse_term(lex(text)), scope, globals);
}

inline std::vector<std::string> stdlib_paths() {
  std::string dir = HITKERNEL_STDLIB_DIR;
  return {dir + "/prelude.hk", dir + "/one_step.hk", dir + "/seq_colim.hk", dir + "/trunc.hk",
          dir + "/corollaries.hk"};
}

inline std::string first_code(const RunReport& r) {
  return r.diagnostics.empty() ? std::string() : r.diagnostics.front().diagnostic.code;
}

namespace detail {

inline void rename(Bound& b) {
  for (auto& n : b.names) n += "_r";
}
template <class T>
void rename_node(T&) {}
inline void rename_node(node::Pi& p) { rename(p.codomain); }
inline void rename_node(node::Lam& l) { rename(l.body); }
inline void rename_node(node::Sigma& s) { rename(s.second); }
inline void rename_node(node::NatRec& r) {
  rename(r.motive);
  rename(r.succ_case);
}
inline void rename_node(node::J& j) { rename(j.motive); }
inline void rename_node(node::QElim& q) {
  rename(q.motive);
  rename(q.point_case);
  rename(q.coh_case);
}

}  // namespace detail

/// Same term with every binder's display name changed.
inline TermPtr rename_binders(const TermPtr& t) {
  if (!t) return t;
  std::vector<TermPtr> kids;
  for (const auto& c : children(*t)) kids.push_back(rename_binders(*c.term));
  TermNode n = with_children(*t, kids)->node;
  std::visit([](auto& x) { detail::rename_node(x); }, n);
  return make(std::move(n), t->span);
}

struct RoundTrip {
  std::size_t terms = 0;
  std::vector<std::string> failures;
};

/// Elaborates every declaration of the shipped library, prints each of its terms with renamed
/// binders, re-parses and re-elaborates the text, and compares up to alpha.
inline RoundTrip stdlib_round_trip() {
  RoundTrip out;
  Workspace ws;
  ws.check_files(stdlib_paths());
  GlobalLookup lookup = [&](const std::string& n) { return ws.globals().contains(n); };
  for (const auto& path : stdlib_paths()) {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    ParsedFile file = parse(lex(buf.str()));
    if (!file.diagnostics.empty()) out.failures.push_back(path + ": does not parse");
    for (const auto& d : file.decls) {
      CoreDecl c = elaborate_decl(d, lookup);
      std::vector<std::string> scope;
      auto visit = [&](const TermPtr& t) {
        if (!t) return;
        ++out.terms;
        std::string text = pretty(rename_binders(t), scope);
        try {
          TermPtr back = core(text, scope, lookup);
          if (!alpha_eq(back, t)) out.failures.push_back(c.name + ": " + text);
        } catch (const DiagnosticError& e) {
          out.failures.push_back(c.name + ": " + e.diagnostic().message + " in " + text);
        }
      };
      for (const auto& [name, type] : c.telescope) {
        visit(type);
        scope.push_back(name);
      }
      visit(c.type);
      visit(c.body);
      visit(c.rhs);
    }
  }
  return out;
}

/// A workspace plus a telescope of neutral assumptions, for stating terms in context.
class Session {
 public:
  explicit Session(CheckerOptions options = {}) : ws_(options) {}

  RunReport load(const std::vector<std::string>& files) { return ws_.check_files(files); }

  void assume(const std::string& name, const std::string& type) {
    TermPtr t = term(type);
    ws_.checker().check_type(ctx_, t);
    ctx_ = ctx_.extend(name, ws_.checker().eval(ctx_, t));
    names_.push_back(name);
  }

  TermPtr term(const std::string& text) {
    return core(text, names_, [this](const std::string& n) { return ws_.globals().contains(n); });
  }
  ValuePtr type_of(const std::string& text) { return ws_.checker().infer(ctx_, term(text)); }
  TermPtr normal(const std::string& text) { return ws_.checker().normalize(ctx_, term(text)); }
  bool defeq(const std::string& a, const std::string& b) {
    TermPtr ta = term(a), tb = term(b);
    ValuePtr ty = ws_.checker().infer(ctx_, ta);
    ws_.checker().check(ctx_, tb, ty);
    return ws_.checker().normalizer().convertible(ctx_.locals, ws_.checker().eval(ctx_, ta),
                                                  ws_.checker().eval(ctx_, tb), ty);
  }
  std::string show(const TermPtr& t) const { return pretty(t, names_); }

  Workspace& ws() { return ws_; }
  Checker& checker() { return ws_.checker(); }
  const Context& ctx() const { return ctx_; }
  const std::vector<std::string>& names() const { return names_; }

 private:
  Workspace ws_;
  Context ctx_;
  std::vector<std::string> names_;
};

/// Code of the first diagnostic raised while elaborating and checking `text` in `s`.
inline std::string error_code(Session& s, const std::string& text) {
  try {
    s.type_of(text);
  } catch (const DiagnosticError& e) {
    return e.diagnostic().code;
  }
  return "";
}

}  // namespace hitkernel::testing
