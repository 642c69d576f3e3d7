#include <doctest.h>

#include "hitkernel/generator.hpp"
#include "hitkernel/oracle.hpp"
#include "support.hpp"

using namespace hitkernel;
using hitkernel::testing::core;

TEST_CASE("instantiate replaces the bound variable") {
  CHECK(alpha_eq(instantiate(var(0), {zero()}), zero()));
  // Lam(_, Var 1) under one binder: the free variable crosses the lambda.
  CHECK(alpha_eq(instantiate(lam("_", var(1)), {zero()}), lam("_", zero())));
  TermPtr body = app(var(0), var(0));
  TermPtr got = instantiate(body, {succ(zero())});
  CHECK(alpha_eq(got, app(succ(zero()), succ(zero()))));
  auto named = oracle::substitute(oracle::from_core(body, {"b"}), "b", oracle::from_core(succ(zero()), {}));
  CHECK(oracle::alpha_equal(oracle::from_core(got, {}), named));
}

TEST_CASE("instantiate with several arguments sets outermost first") {
  // body under (x, y): pair x y
  TermPtr got = instantiate(pair(var(1), var(0)), {zero(), star()});
  CHECK(alpha_eq(got, pair(zero(), star())));
}

TEST_CASE("instantiate lowers variables of the ambient scope") {
  // Under (a) in ambient (c): App(Var 1, Var 0) with a := zero is App(Var 0, zero).
  CHECK(alpha_eq(instantiate(app(var(1), var(0)), {zero()}), app(var(0), zero())));
}

TEST_CASE("alpha_eq ignores names") {
  CHECK(alpha_eq(lam("x", var(0)), lam("y", var(0))));
  CHECK_FALSE(alpha_eq(zero(), succ(zero())));
  CHECK_FALSE(alpha_eq(lam("x", var(0)), lam("x", var(1))));
  CHECK(alpha_eq(core("fun (x : Nat) => x"), core("fun (y : Nat) => y")));
}

TEST_CASE("shift, occurs and well_scoped") {
  TermPtr t = lam("x", app(var(0), var(1)));
  CHECK(alpha_eq(shift(t, 2), lam("x", app(var(0), var(3)))));
  CHECK(occurs(t, 0));
  CHECK_FALSE(occurs(t, 1));
  CHECK(well_scoped(t, 1));
  CHECK_FALSE(well_scoped(t, 0));
  CHECK(term_size(t) == 4);
}

TEST_CASE("referenced globals are listed once in order") {
  auto names = referenced_globals(app(ref("f"), {ref("g"), ref("f")}));
  REQUIRE(names.size() == 2);
  CHECK(names[0] == "f");
  CHECK(names[1] == "g");
}

namespace {

// Ambient names overlap the generator's binder hints, so the reference substitutor has to
// rename to avoid capture.
const std::vector<std::string> kAmbient = {"x", "y", "z", "n"};

struct Instance {
  std::vector<std::string> ambient;
  std::vector<std::string> binders;
  TermPtr body;
  std::vector<TermPtr> args;
};

Instance random_instance(TermGenerator& gen) {
  Instance in;
  std::vector<STypePtr> ctx;
  unsigned ambient = gen.below(4);
  for (unsigned i = 0; i < ambient; ++i) {
    ctx.push_back(gen.random_type(1));
    in.ambient.push_back(kAmbient[i]);
  }
  std::vector<STypePtr> bound = ctx;
  unsigned k = 1 + gen.below(2);
  for (unsigned i = 0; i < k; ++i) {
    STypePtr ty = gen.random_type(1);
    bound.push_back(ty);
    in.binders.push_back(i == 0 ? "p" : "q");
    in.args.push_back(gen.term(ctx, ty, 3));
  }
  in.body = gen.term(bound, gen.random_type(2), 3);
  return in;
}

}  // namespace

TEST_CASE("property: instantiate agrees with named substitution and stays well scoped") {
  TermGenerator gen(7);
  for (int i = 0; i < 400; ++i) {
    Instance in = random_instance(gen);
    TermPtr got = instantiate(in.body, in.args);
    REQUIRE(well_scoped(got, in.ambient.size()));

    auto scope = in.ambient;
    scope.insert(scope.end(), in.binders.begin(), in.binders.end());
    auto expected = oracle::from_core(in.body, scope);
    for (std::size_t j = 0; j < in.args.size(); ++j) {
      expected = oracle::substitute(expected, in.binders[j], oracle::from_core(in.args[j], in.ambient));
    }
    auto actual = oracle::from_core(got, in.ambient);
    INFO(oracle::show(expected));
    INFO(oracle::show(actual));
    REQUIRE(oracle::alpha_equal(actual, expected));
  }
}

TEST_CASE("property: alpha_eq is an equivalence and respects instantiation") {
  TermGenerator gen(11);
  for (int i = 0; i < 300; ++i) {
    Instance in = random_instance(gen);
    auto scope = in.ambient;
    scope.insert(scope.end(), in.binders.begin(), in.binders.end());
    // Re-elaborating the printed form gives the same term with fresh binder names.
    TermPtr u = core(pretty(in.body, scope), scope);
    TermPtr v = core(pretty(u, scope, PrettyOptions{false}), scope);
    CHECK(alpha_eq(in.body, in.body));
    REQUIRE(alpha_eq(in.body, u) == alpha_eq(u, in.body));
    REQUIRE(alpha_eq(in.body, u));
    REQUIRE(alpha_eq(u, v));
    REQUIRE(alpha_eq(in.body, v));
    REQUIRE(alpha_eq(instantiate(in.body, in.args), instantiate(u, in.args)));
  }
}

TEST_CASE("property: alpha_eq agrees with the named reference on unrelated pairs") {
  TermGenerator gen(13);
  std::size_t equal = 0;
  for (int i = 0; i < 300; ++i) {
    STypePtr ty = gen.random_type(1);
    TermPtr a = gen.term({}, ty, 2), b = gen.term({}, ty, 2);
    bool ours = alpha_eq(a, b);
    equal += ours;
    REQUIRE(ours == oracle::alpha_equal(oracle::from_core(a, {}), oracle::from_core(b, {})));
    REQUIRE(ours == alpha_eq(b, a));
  }
  CHECK(equal < 300);
}

TEST_CASE("oracle substitution renames to avoid capture") {
  namespace o = oracle;
  // (fun y => x)[x := y] must not become fun y => y.
  auto t = o::node("lam", {o::Part{{}, nullptr}, o::Part{{"y"}, o::nvar("x")}});
  auto s = o::substitute(t, "x", o::nvar("y"));
  CHECK(o::free_names(s).count("y") == 1);
  CHECK_FALSE(o::alpha_equal(s, o::node("lam", {o::Part{{}, nullptr}, o::Part{{"y"}, o::nvar("y")}})));
}
