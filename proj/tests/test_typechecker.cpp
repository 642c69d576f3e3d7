#include <doctest.h>

#include "hitkernel/generator.hpp"
#include "support.hpp"

using namespace hitkernel;
using namespace hitkernel::testing;

namespace {

std::string decl_code(const std::string& source, CheckerOptions options = {}) {
  Workspace ws(options);
  return first_code(ws.check_source(source, "t.hk"));
}

}  // namespace

TEST_CASE("definitions of the wrong type are rejected") {
  CHECK(decl_code("def bad : Unit := zero\n") == "E-MISMATCH");
  CHECK(decl_code("def bad : Nat := star\n") == "E-MISMATCH");
  CHECK(decl_code("def ok : Nat := 3\n").empty());
}

TEST_CASE("diagnostic codes for common mistakes") {
  Session s;
  s.assume("n", "Nat");
  CHECK(error_code(s, "n n") == "E-NOTFN");
  CHECK(error_code(s, "fst n") == "E-NOTPAIR");
  CHECK(error_code(s, "fun x => x") == "E-NOINFER");
  CHECK(error_code(s, "Type4") == "E-UNIVERSE");
  CHECK(error_code(s, "m") == "E-UNBOUND");
  CHECK(error_code(s, "succ star") == "E-MISMATCH");
  CHECK(error_code(s, "Type3").empty());
  CHECK(decl_code("def a : Nat := 1\ndef a : Nat := 2\n") == "E-DUP");
  CHECK(decl_code("#assert_defeq 1 2 : Nat\n") == "E-ASSERT");
}

TEST_CASE("the maximum universe level is configurable") {
  CHECK(decl_code("def t : Type2 := Type1\n").empty());
  CHECK(decl_code("def t : Type2 := Type1\n", CheckerOptions{2, {}}) == "E-UNIVERSE");
}

TEST_CASE("universe levels of type formers") {
  Session s;
  auto level = [&](const std::string& text) {
    ValuePtr ty = s.type_of(text);
    REQUIRE(ty->is<val::Universe>());
    return ty->as<val::Universe>()->level;
  };
  CHECK(level("Nat") == 0);
  CHECK(level("Type0 -> Nat") == 1);
  CHECK(level("(X : Type0) * X") == 1);
  CHECK(level("Id Nat 0 1") == 0);
  // A quotient lives in the universe of its carrier.
  CHECK(level("quot Nat (fun _ _ => Type0)") == 0);
  CHECK(level("quot Type0 (fun _ _ => Unit)") == 1);
}

TEST_CASE("cumulativity: anything at Type0 also checks at Type1") {
  Session s;
  Context empty;
  ValuePtr type1 = s.checker().eval(empty, universe(1));
  ValuePtr type2 = s.checker().eval(empty, universe(2));
  TermGenerator gen(3);
  for (int i = 0; i < 200; ++i) {
    TermPtr t = type_term(gen.random_type(3));
    REQUIRE(s.checker().check_type(empty, t) == 0);
    s.checker().check(empty, t, type1);
    s.checker().check(empty, t, type2);
  }
  CHECK(s.checker().subtype(empty, s.checker().eval(empty, arrow(nat(), universe(0))),
                            s.checker().eval(empty, arrow(nat(), universe(1)))));
  CHECK_FALSE(s.checker().subtype(empty, type1, s.checker().eval(empty, universe(0))));
}

TEST_CASE("property: generated terms check and inference is deterministic") {
  Session s;
  Context empty;
  TermGenerator gen(5);
  for (int i = 0; i < 300; ++i) {
    STypePtr ty = gen.random_type(2);
    TermPtr t = gen.term({}, ty);
    ValuePtr expected = s.checker().eval(empty, type_term(ty));
    s.checker().check(empty, t, expected);
    if (t->is<node::Lam>()) continue;
    TermPtr first = s.checker().quote_type(empty, s.checker().infer(empty, t));
    TermPtr second = s.checker().quote_type(empty, s.checker().infer(empty, t));
    REQUIRE(alpha_eq(first, second));
    REQUIRE(s.checker().subtype(empty, s.checker().infer(empty, t), expected));
  }
}

TEST_CASE("the qelim coherence witness is definitionally star") {
  // Over the relation that is constantly Unit, the coherence may ignore r.
  std::string src =
      "def R : Nat -> Nat -> Type0 := fun _ _ => Unit\n"
      "def c (x : quot Nat R) : Nat :=\n"
      "  qelim Nat R (fun _ => Nat) (fun _ => 0)\n"
      "    (fun a b r => J (quot Nat R) (qmk Nat R a)\n"
      "       (fun y p => Id Nat (J (quot Nat R) (qmk Nat R a) (fun _ _ => Nat) 0 y p) 0)\n"
      "       (refl Nat 0) (qmk Nat R b) (qpath Nat R a b star)) x\n";
  Workspace ws;
  RunReport r = ws.check_source(src, "c.hk");
  CHECK(r.error_count() == 0);
}

TEST_CASE("a wrong coherence is rejected") {
  std::string src =
      "def R : Nat -> Nat -> Type0 := fun _ _ => Unit\n"
      "def c (x : quot Nat R) : Nat :=\n"
      "  qelim Nat R (fun _ => Nat) (fun a => a) (fun a b r => refl Nat a) x\n";
  CHECK(decl_code(src) == "E-MISMATCH");
}

TEST_CASE("one-step truncation elimination is the quotient eliminator at the total relation") {
  Session s;
  REQUIRE(s.load(stdlib_paths()).error_count() == 0);
  const GlobalEntry* e = s.ws().globals().find("one_step_tr_elim");
  REQUIRE(e != nullptr);
  CHECK(pretty(e->type) ==
        "(A : Type0) (P : one_step_tr A -> Type0) (pt : (a : A) -> P (tr A a)) -> ((a : A) (b : A) -> Id (P (tr A b)) "
        "(transport (one_step_tr A) P (tr A a) (tr A b) (tr_eq A a b) (pt a)) (pt b)) -> (x : one_step_tr A) -> P x");
}

TEST_CASE("diagnostics from source carry positions") {
  Workspace ws;
  RunReport r = ws.check_source("def a : Nat := 0\n\ndef b : Nat :=\n  succ star\n", "pos.hk");
  REQUIRE(r.diagnostics.size() == 1);
  const Span& span = r.diagnostics[0].diagnostic.span;
  CHECK(span.valid());
  CHECK(span.start_line == 4);
  CHECK(span.start_col == 8);
}

TEST_CASE("axiom audit") {
  Session s;
  REQUIRE(s.load(stdlib_paths()).error_count() == 0);
  CHECK(s.ws().axioms_used("is_hprop_truncX") == std::set<std::string>{"funext"});
  CHECK(s.ws().axioms_used("trunc_elim").empty());
  CHECK(s.ws().axioms_used("concat").empty());
  CHECK(s.ws().axioms_used("funext") == std::set<std::string>{"funext"});
}
