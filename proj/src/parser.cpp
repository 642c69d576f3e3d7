#include "hitkernel/parser.hpp"

namespace hitkernel {

namespace {

constexpr unsigned long long kMaxNumeral = 100000;

SurfacePtr make_surface(decltype(SurfaceTerm::node) n, Span span) {
  return std::make_shared<const SurfaceTerm>(SurfaceTerm{std::move(n), span});
}

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : toks_(tokens) {}

  ParsedFile file() {
    ParsedFile out;
    try {
      while (is_kw("import")) {
        Span s = next().span;
        const Token& name = expect_ident("a module name after 'import'");
        out.imports.push_back(Import{name.lexeme, Span::merge(s, name.span)});
      }
    } catch (const DiagnosticError& e) {
      out.diagnostics.push_back(e.diagnostic());
      recover();
    }
    while (!at_end()) {
      std::size_t before = pos_;
      try {
        out.decls.push_back(decl());
      } catch (const DiagnosticError& e) {
        out.diagnostics.push_back(e.diagnostic());
        if (pos_ == before) ++pos_;
        recover();
      }
    }
    return out;
  }

  SurfacePtr single_term() {
    SurfacePtr t = term();
    if (!at_end()) error("end of expression");
    return t;
  }

 private:
  // --- token helpers -------------------------------------------------------------------------

  bool at_end() const { return pos_ >= toks_.size(); }
  const Token* peek(std::size_t k = 0) const { return pos_ + k < toks_.size() ? &toks_[pos_ + k] : nullptr; }
  bool is_sym(std::string_view s, std::size_t k = 0) const {
    const Token* t = peek(k);
    return t && t->kind == TokenKind::symbol && t->lexeme == s;
  }
  bool is_kw(std::string_view s) const {
    const Token* t = peek();
    return t && t->kind == TokenKind::keyword && t->lexeme == s;
  }
  bool is_ident(std::size_t k = 0) const {
    const Token* t = peek(k);
    return t && t->kind == TokenKind::identifier;
  }
  const Token& next() { return toks_[pos_++]; }

  Span here() const {
    if (const Token* t = peek()) return t->span;
    if (toks_.empty()) return Span{0, 1, 1, 1, 1};
    Span s = toks_.back().span;
    return Span{s.file, s.end_line, s.end_col, s.end_line, s.end_col};
  }
  Span last_span() const { return pos_ > 0 ? toks_[pos_ - 1].span : here(); }

  [[noreturn]] void error(const std::string& expected) const {
    const Token* t = peek();
    if (t && t->kind == TokenKind::error) {
      std::string what = t->lexeme.size() > 1 && t->lexeme[0] == '#' ? "unknown directive '" + t->lexeme + "'"
                                                                      : "unexpected character '" + t->lexeme + "'";
      throw DiagnosticError(code::lex, what, t->span);
    }
    std::string found = t ? "'" + t->lexeme + "'" : "end of input";
    throw DiagnosticError(code::parse, "expected " + expected + " but found " + found, here());
  }

  const Token& expect_sym(std::string_view s) {
    if (!is_sym(s)) error("'" + std::string(s) + "'");
    return next();
  }
  const Token& expect_ident(const std::string& what) {
    if (!is_ident()) error(what);
    return next();
  }

  bool at_decl_start() const {
    const Token* t = peek();
    if (!t) return true;
    if (t->kind == TokenKind::directive) return true;
    return t->kind == TokenKind::keyword && (t->lexeme == "def" || t->lexeme == "axiom" || t->lexeme == "import");
  }

  void recover() {
    while (!at_end() && !at_decl_start()) ++pos_;
  }

  // --- declarations --------------------------------------------------------------------------

  SurfaceDecl decl() {
    SurfaceDecl d;
    const Token* t = peek();
    Span start = here();
    if (is_kw("def") || is_kw("axiom")) {
      bool is_def = t->lexeme == "def";
      next();
      d.form = is_def ? DeclForm::def : DeclForm::axiom;
      d.name = expect_ident("a declaration name").lexeme;
      while (is_sym("(")) d.params.push_back(binder_group());
      expect_sym(":");
      d.type = term();
      if (is_def) {
        expect_sym(":=");
        d.body = term();
      }
    } else if (t && t->kind == TokenKind::directive) {
      std::string which = next().lexeme;
      while (is_sym("[")) d.telescope.push_back(assumption());
      if (which == "#check") {
        d.form = DeclForm::check;
        d.body = term();
      } else if (which == "#normalize") {
        d.form = DeclForm::normalize;
        d.body = term();
      } else if (which == "#assert_type") {
        d.form = DeclForm::assert_type;
        d.body = term();
        expect_sym(":");
        d.type = term();
      } else {
        d.form = DeclForm::assert_defeq;
        d.body = atom_or_error();
        d.rhs = atom_or_error();
        if (is_sym(":")) {
          next();
          d.type = term();
        }
      }
    } else {
      error("a declaration ('def', 'axiom' or a directive)");
    }
    if (!at_decl_start()) error("the end of the declaration");
    d.span = Span::merge(start, last_span());
    return d;
  }

  SurfaceBinder assumption() {
    Span start = expect_sym("[").span;
    SurfaceBinder b;
    do {
      b.names.push_back(expect_ident("an assumption name").lexeme);
    } while (is_ident());
    expect_sym(":");
    b.type = term();
    b.span = Span::merge(start, expect_sym("]").span);
    return b;
  }

  // --- terms ---------------------------------------------------------------------------------

  // '(' ident+ ':' begins a binder group rather than a parenthesized term.
  bool binder_group_ahead() const {
    if (!is_sym("(")) return false;
    std::size_t k = 1;
    while (is_ident(k)) ++k;
    return k > 1 && is_sym(":", k);
  }

  SurfaceBinder binder_group() {
    Span start = expect_sym("(").span;
    SurfaceBinder b;
    do {
      b.names.push_back(expect_ident("a binder name").lexeme);
    } while (is_ident());
    expect_sym(":");
    b.type = term();
    b.span = Span::merge(start, expect_sym(")").span);
    return b;
  }

  SurfacePtr term() {
    Span start = here();
    if (is_kw("fun")) {
      next();
      std::vector<SurfaceBinder> binders;
      while (!is_sym("=>")) {
        if (binder_group_ahead()) {
          binders.push_back(binder_group());
        } else if (is_ident()) {
          const Token& n = next();
          binders.push_back(SurfaceBinder{{n.lexeme}, nullptr, n.span});
        } else {
          error(binders.empty() ? "a binder after 'fun'" : "a binder or '=>'");
        }
      }
      if (binders.empty()) error("a binder after 'fun'");
      expect_sym("=>");
      SurfacePtr body = term();
      return make_surface(surface::Fun{std::move(binders), body}, Span::merge(start, body->span));
    }
    if (is_kw("let")) {
      next();
      std::string name = expect_ident("a name after 'let'").lexeme;
      expect_sym(":");
      SurfacePtr type = term();
      expect_sym(":=");
      SurfacePtr value = term();
      if (!is_kw("in")) error("'in'");
      next();
      SurfacePtr body = term();
      return make_surface(surface::Let{name, type, value, body}, Span::merge(start, body->span));
    }
    if (binder_group_ahead()) {
      std::vector<SurfaceBinder> binders;
      while (binder_group_ahead()) binders.push_back(binder_group());
      if (is_sym("->")) {
        next();
        SurfacePtr body = term();
        return make_surface(surface::PiBinders{std::move(binders), body}, Span::merge(start, body->span));
      }
      if (is_sym("*")) {
        next();
        SurfacePtr body = term();
        return make_surface(surface::SigmaBinders{std::move(binders), body}, Span::merge(start, body->span));
      }
      error("'->' or '*' after binders");
    }
    SurfacePtr lhs = product();
    if (is_sym("->")) {
      next();
      SurfacePtr rhs = term();
      return make_surface(surface::Arrow{lhs, rhs}, Span::merge(lhs->span, rhs->span));
    }
    return lhs;
  }

  SurfacePtr product() {
    SurfacePtr lhs = application();
    if (is_sym("*")) {
      next();
      SurfacePtr rhs = product();
      return make_surface(surface::Product{lhs, rhs}, Span::merge(lhs->span, rhs->span));
    }
    return lhs;
  }

  bool atom_ahead() const {
    const Token* t = peek();
    if (!t) return false;
    if (t->kind == TokenKind::identifier || t->kind == TokenKind::number) return true;
    return is_sym("(") && !binder_group_ahead();
  }

  SurfacePtr application() {
    SurfacePtr head = atom_or_error();
    std::vector<SurfacePtr> args;
    while (atom_ahead()) args.push_back(atom());
    if (args.empty()) return head;
    Span span = Span::merge(head->span, args.back()->span);
    return make_surface(surface::Apply{head, std::move(args)}, span);
  }

  SurfacePtr atom_or_error() {
    if (!atom_ahead()) error("a term");
    return atom();
  }

  SurfacePtr atom() {
    const Token& t = next();
    if (t.kind == TokenKind::identifier) return make_surface(surface::Name{t.lexeme}, t.span);
    if (t.kind == TokenKind::number) {
      if (t.lexeme.size() > 6 || std::stoull(t.lexeme) > kMaxNumeral) {
        throw DiagnosticError(code::parse, "numeral " + t.lexeme + " is too large", t.span);
      }
      return make_surface(surface::Number{std::stoull(t.lexeme)}, t.span);
    }
    // '(' term ')' or '(' term ',' term ')'
    Span start = t.span;
    SurfacePtr inner = term();
    if (is_sym(",")) {
      next();
      SurfacePtr second = term();
      Span end = expect_sym(")").span;
      return make_surface(surface::Pair{inner, second}, Span::merge(start, end));
    }
    Span end = expect_sym(")").span;
    auto copy = *inner;
    copy.span = Span::merge(start, end);
    return std::make_shared<const SurfaceTerm>(std::move(copy));
  }

  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
};

}  // namespace

ParsedFile parse(const std::vector<Token>& tokens) { return Parser(tokens).file(); }

SurfacePtr parse_term(const std::vector<Token>& tokens) { return Parser(tokens).single_term(); }

}  // namespace hitkernel
