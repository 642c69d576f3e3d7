#include <doctest.h>

#include "hitkernel/generator.hpp"
#include "support.hpp"

using namespace hitkernel;
using namespace hitkernel::testing;

namespace {

std::string parse_error(const std::string& text, Span* span = nullptr) {
  try {
    auto tokens = lex(text);
    auto errs = lex_errors(tokens);
    if (!errs.empty()) return errs.front().code;
    core(text);
  } catch (const DiagnosticError& e) {
    if (span) *span = e.diagnostic().span;
    return e.diagnostic().code;
  }
  return "";
}

}  // namespace

TEST_CASE("lexing a small definition") {
  // def id : Nat -> Nat := fun ( x : Nat ) => x
  auto tokens = lex("def id : Nat -> Nat := fun (x : Nat) => x");
  CHECK(tokens.size() == 15);
  CHECK(tokens[0].kind == TokenKind::keyword);
  CHECK(tokens[1].kind == TokenKind::identifier);
  CHECK(tokens[4].lexeme == "->");
  CHECK(tokens[6].lexeme == ":=");
  CHECK(tokens[14].span.start_col == 41);
}

TEST_CASE("comments and whitespace produce no tokens") {
  CHECK(lex("-- comment").empty());
  CHECK(lex("  \n\t-- a\n-- b\n").empty());
}

TEST_CASE("characters outside the language are lexical errors") {
  auto tokens = lex("def x : Nat := \xe2\x8a\xa5");
  auto errs = lex_errors(tokens);
  REQUIRE(errs.size() == 1);
  CHECK(errs[0].code == "E-LEX");
  CHECK(errs[0].span.start_col == 16);
}

TEST_CASE("parse errors point at the offending token") {
  Span span;
  CHECK(parse_error("(x : A -> B", &span) == "E-PARSE");
  CHECK(span.start_line == 1);
  CHECK(span.start_col == 12);
  CHECK(parse_error("fun => x") == "E-PARSE");
  CHECK(parse_error("(1, 2") == "E-PARSE");
}

TEST_CASE("primitives must be fully applied") {
  CHECK(parse_error("qelim Nat (fun _ _ => Unit) (fun _ => Nat) (fun a => a) (fun a b r => refl Nat a)") ==
        "E-ARITY");
  CHECK(parse_error("succ") == "E-ARITY");
  CHECK(parse_error("refl Nat") == "E-ARITY");
}

TEST_CASE("numerals elaborate to successors") {
  CHECK(alpha_eq(core("3"), numeral(3)));
  CHECK(alpha_eq(core("0"), zero()));
  CHECK(pretty(numeral(2)) == "2");
  CHECK(pretty(numeral(2), {}, PrettyOptions{false}) == "succ (succ zero)");
}

TEST_CASE("pretty printing of binders") {
  CHECK(pretty(core("(x : Nat) -> Nat")) == "Nat -> Nat");
  CHECK(pretty(core("(A : Type0) (x : A) -> Id A x x")) == "(A : Type0) (x : A) -> Id A x x");
  CHECK(pretty(core("(n : Nat) * Unit")) == "Nat * Unit");
  CHECK(pretty(core("(A : Type0) * A")) == "(A : Type0) * A");
  CHECK(pretty(core("fun (x : Nat) (y : Nat) => x")) == "fun (x : Nat) (_ : Nat) => x");
  CHECK(pretty(core("(Nat -> Nat) -> Nat")) == "(Nat -> Nat) -> Nat");
}

TEST_CASE("pretty printing avoids capture when names repeat") {
  // fun x => fun x => outer x
  TermPtr t = lam("x", lam("x", var(1)), nat());
  std::string text = pretty(t);
  CHECK(alpha_eq(core(text), t));
}

TEST_CASE("let is expanded") {
  CHECK(alpha_eq(core("let x : Nat := 2 in succ x"), numeral(3)));
}

TEST_CASE("parser recovers at the next declaration") {
  Workspace ws;
  RunReport r = ws.check_source("def a : Nat := (\ndef b : Nat := 1\ndef c : := 2\ndef d : Nat := 3\n", "r.hk");
  REQUIRE(r.diagnostics.size() == 2);
  CHECK(r.diagnostics[0].diagnostic.code == "E-PARSE");
  CHECK(r.diagnostics[1].diagnostic.span.start_line == 3);
  CHECK(ws.globals().contains("b"));
  CHECK(ws.globals().contains("d"));
}

TEST_CASE("parsing is total on garbage") {
  TermGenerator gen(99);
  const char* pieces[] = {"(", ")", "fun", "=>", "->", "*", ",", ":", "x", "Nat", "let", "in", ":=", "def", "1", "#check"};
  for (int i = 0; i < 500; ++i) {
    std::string text;
    unsigned n = gen.below(12);
    for (unsigned k = 0; k < n; ++k) text += std::string(pieces[gen.below(16)]) + " ";
    ParsedFile f = parse(lex(text));
    (void)f;
  }
  CHECK(true);
}

TEST_CASE("property: printed generated terms re-elaborate to themselves") {
  TermGenerator gen(21);
  std::vector<std::string> scope = {"c0", "c1"};
  for (int i = 0; i < 300; ++i) {
    std::vector<STypePtr> ctx = {gen.random_type(1), gen.random_type(1)};
    TermPtr t = gen.term(ctx, gen.random_type(2));
    for (bool numerals : {true, false}) {
      std::string text = pretty(rename_binders(t), scope, PrettyOptions{numerals});
      INFO(text);
      REQUIRE(alpha_eq(core(text, scope), t));
    }
  }
}

TEST_CASE("every library declaration round-trips through the printer") {
  RoundTrip r = stdlib_round_trip();
  for (const auto& f : r.failures) INFO(f);
  CHECK(r.terms > 100);
  CHECK(r.failures.empty());
}
