#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "hitkernel/lexer.hpp"
#include "hitkernel/typechecker.hpp"

namespace hitkernel {

struct SurfaceTerm;
using SurfacePtr = std::shared_ptr<const SurfaceTerm>;

/// `(x y : T)`, or a bare `x` (type null) in lambda binder lists.
struct SurfaceBinder {
  std::vector<std::string> names;
  SurfacePtr type;
  Span span;
};

namespace surface {
struct Name { std::string name; };
struct Number { unsigned long long value; };
struct Fun { std::vector<SurfaceBinder> binders; SurfacePtr body; };
struct PiBinders { std::vector<SurfaceBinder> binders; SurfacePtr body; };     // (x : A) -> B
struct SigmaBinders { std::vector<SurfaceBinder> binders; SurfacePtr body; };  // (x : A) * B
struct Arrow { SurfacePtr domain; SurfacePtr codomain; };
struct Product { SurfacePtr first; SurfacePtr second; };
struct Apply { SurfacePtr head; std::vector<SurfacePtr> args; };
struct Pair { SurfacePtr first; SurfacePtr second; };
struct Let { std::string name; SurfacePtr type; SurfacePtr value; SurfacePtr body; };
}  // namespace surface

struct SurfaceTerm {
  std::variant<surface::Name, surface::Number, surface::Fun, surface::PiBinders, surface::SigmaBinders,
               surface::Arrow, surface::Product, surface::Apply, surface::Pair, surface::Let>
      node;
  Span span;
};

struct SurfaceDecl {
  DeclForm form = DeclForm::def;
  std::string name;
  std::vector<SurfaceBinder> params;     // def/axiom parameters
  std::vector<SurfaceBinder> telescope;  // directive assumptions `[x : T]`
  SurfacePtr type;
  SurfacePtr body;
  SurfacePtr rhs;
  Span span;
};

struct Import {
  std::string name;
  Span span;
};

struct ParsedFile {
  std::vector<Import> imports;
  std::vector<SurfaceDecl> decls;
  std::vector<Diagnostic> diagnostics;  // lexing and parsing errors, in source order
};

/// Parses a token stream. On an error the parser records a diagnostic and resumes at the next
/// declaration keyword, so one file can report several independent errors.
ParsedFile parse(const std::vector<Token>& tokens);

/// Parses a single term (used for command-line expressions). Throws DiagnosticError.
SurfacePtr parse_term(const std::vector<Token>& tokens);

}  // namespace hitkernel
