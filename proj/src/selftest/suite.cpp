#include <functional>
#include <sstream>

#include "hitkernel/driver.hpp"
#include "hitkernel/elaborator.hpp"
#include "hitkernel/generator.hpp"
#include "hitkernel/lexer.hpp"
#include "hitkernel/oracle.hpp"
#include "hitkernel/parser.hpp"
#include "hitkernel/pretty.hpp"
#include "hitkernel/selftest.hpp"

namespace hitkernel {

namespace {

constexpr std::size_t kMaxFailures = 3;

struct Sample {
  std::vector<STypePtr> ctx_types;
  Context ctx;
  std::vector<std::string> names;
  STypePtr type;
  ValuePtr type_value;
  TermPtr term;
};

class Suite {
 public:
  explicit Suite(const SelftestOptions& options)
      : options_(options), checker_(globals_, CheckerOptions{kDefaultMaxLevel, options.eval}), gen_(options.seed) {}

  std::vector<PropertyResult> run() {
    for (std::size_t i = 0; i < options_.generated_terms; ++i) samples_.push_back(sample(gen_, 3));
    std::vector<PropertyResult> out;
    out.push_back(idempotence());
    out.push_back(oracle_agreement());
    out.push_back(defeq_laws());
    out.push_back(computation_rules());
    out.push_back(subject_reduction());
    out.push_back(round_trip());
    return out;
  }

 private:
  const Normalizer& nbe() const { return checker_.normalizer(); }

  Sample sample(TermGenerator& gen, unsigned ctx_max) {
    Sample s;
    unsigned n = gen.below(ctx_max + 1);
    for (unsigned i = 0; i < n; ++i) push(s, gen.random_type(2));
    s.type = gen.random_type(2);
    s.type_value = checker_.eval(s.ctx, type_term(s.type));
    s.term = gen.term(s.ctx_types, s.type);
    return s;
  }

  void push(Sample& s, const STypePtr& t) {
    s.names.push_back("c" + std::to_string(s.names.size()));
    s.ctx = s.ctx.extend(s.names.back(), checker_.eval(s.ctx, type_term(t)));
    s.ctx_types.push_back(t);
  }

  TermPtr nf(const Context& ctx, const TermPtr& t, const ValuePtr& type) const {
    return nbe().readback(ctx.locals, nbe().eval(ctx.env, t), type);
  }

  bool conv(const Context& ctx, const TermPtr& a, const TermPtr& b, const ValuePtr& type) const {
    return nbe().convertible(ctx.locals, nbe().eval(ctx.env, a), nbe().eval(ctx.env, b), type);
  }

  bool checks(const Context& ctx, const TermPtr& t, const ValuePtr& type, std::string* why = nullptr) {
    try {
      checker_.check(ctx, t, type);
      return true;
    } catch (const DiagnosticError& e) {
      if (why) *why = e.diagnostic().code + " " + e.diagnostic().message;
      return false;
    }
  }

  static void tally(PropertyResult& r, bool ok, const std::function<std::string()>& describe) {
    if (ok) {
      ++r.passed;
      return;
    }
    ++r.failed;
    if (r.failures.size() < kMaxFailures) r.failures.push_back(describe());
  }

  std::string show(const Sample& s, const TermPtr& t) const {
    std::string text = pretty(t, s.names);
    if (text.size() > 300) text = text.substr(0, 300) + "...";
    return text;
  }

  PropertyResult idempotence() {
    PropertyResult r{"normalize idempotence", 0, 0, {}};
    for (const auto& s : samples_) {
      std::string why;
      if (!checks(s.ctx, s.term, s.type_value, &why)) {
        tally(r, false, [&] { return "generated term rejected (" + why + "): " + show(s, s.term); });
        continue;
      }
      TermPtr once = nf(s.ctx, s.term, s.type_value);
      TermPtr twice = nf(s.ctx, once, s.type_value);
      tally(r, alpha_eq(once, twice), [&] { return show(s, s.term); });
    }
    return r;
  }

  // Closed Nat programs in the lambda/natrec fragment, compared against the substitution
  // interpreter. Samples whose reference evaluation diverges past its fuel are redrawn.
  PropertyResult oracle_agreement() {
    PropertyResult r{"oracle agreement", 0, 0, {}};
    std::vector<TermPtr> programs = fixed_programs();
    TermGenerator gen(options_.seed ^ 0x9e3779b97f4a7c15ULL, GenConfig{5, true});
    Context empty;
    ValuePtr nat_value = checker_.eval(empty, nat());
    std::size_t attempts = 0;
    std::size_t fixed = programs.size();
    for (std::size_t i = 0; r.passed + r.failed < options_.oracle_programs + fixed && attempts < 100000; ++i) {
      TermPtr p;
      if (i < programs.size()) {
        p = programs[i];
      } else {
        ++attempts;
        p = gen.term({}, stype_nat());
      }
      auto expected = oracle::evaluate_nat(oracle::from_core(p, {}), 200000, 10000);
      if (!expected) continue;
      std::string why;
      if (!checks(empty, p, nat_value, &why)) {
        tally(r, false, [&] { return "program rejected (" + why + "): " + pretty(p); });
        continue;
      }
      TermPtr normal = nf(empty, p, nat_value);
      bool ok = alpha_eq(normal, numeral(static_cast<unsigned>(*expected)));
      tally(r, ok, [&] { return pretty(p) + " gave " + pretty(normal) + ", expected " + std::to_string(*expected); });
    }
    return r;
  }

  static std::vector<TermPtr> fixed_programs() {
    using namespace node;
    // add = fun m n => natrec (_. Nat) m (k r. succ r) n; mul via add; iterated doubling.
    auto nat_to_nat = arrow(nat(), nat());
    auto add = lam("m", lam("n", make(NatRec{Bound{{"k"}, nat()}, var(1), Bound{{"k", "r"}, succ(var(0))}, var(0)}), nat()),
                   nat());
    auto mul = lam("m", lam("n", make(NatRec{Bound{{"k"}, nat()}, zero(),
                                             Bound{{"k", "r"}, app(shift(add, 4), {var(0), var(3)})}, var(0)}),
                            nat()),
                   nat());
    auto twice = lam("f", lam("x", app(var(1), app(var(1), var(0))), nat()), nat_to_nat);
    std::vector<TermPtr> out;
    out.push_back(app(add, {numeral(2), numeral(2)}));
    out.push_back(app(mul, {numeral(3), numeral(4)}));
    out.push_back(app(mul, {app(add, {numeral(1), numeral(2)}), numeral(5)}));
    out.push_back(app(twice, {app(twice, {lam("x", succ(succ(var(0))), nat())}), numeral(1)}));
    // A natrec whose motive is a function type: iterate `twice` n times on succ.
    out.push_back(app(make(NatRec{Bound{{"k"}, nat_to_nat}, lam("x", succ(var(0)), nat()),
                                  Bound{{"k", "g"}, app(shift(twice, 2), var(0))}, numeral(3)}),
                      numeral(0)));
    return out;
  }

  // Variants of a term that must all be convertible with it.
  TermPtr variant(const Sample& s, const TermPtr& t) {
    switch (gen_.below(4)) {
      case 0:
        return t;
      case 1:
        return nf(s.ctx, t, s.type_value);
      case 2: {  // beta-expansion through an unused binder
        STypePtr dom = gen_.random_type(1);
        return app(lam("w", shift(t, 1), type_term(dom)), gen_.term(s.ctx_types, dom, 2));
      }
      default:
        return eta_expand(s.type, t);
    }
  }

  static TermPtr eta_expand(const STypePtr& type, const TermPtr& t) {
    switch (type->kind) {
      case SimpleType::arrow:
        return lam("e", app(shift(t, 1), var(0)), type_term(type->left));
      case SimpleType::prod:
        return pair(fst(t), snd(t));
      case SimpleType::unit:
        return star();
      default:
        return t;
    }
  }

  PropertyResult defeq_laws() {
    PropertyResult r{"definitional equality laws", 0, 0, {}};
    for (std::size_t i = 0; i < options_.defeq_triples; ++i) {
      Sample s = sample(gen_, 2);
      // Three variants of one term: all related, and the laws must hold exactly.
      TermPtr a = variant(s, s.term), b = variant(s, s.term), c = variant(s, s.term);
      bool ab = conv(s.ctx, a, b, s.type_value), ba = conv(s.ctx, b, a, s.type_value);
      bool bc = conv(s.ctx, b, c, s.type_value), ac = conv(s.ctx, a, c, s.type_value);
      tally(r, conv(s.ctx, a, a, s.type_value) && ab && ba && bc && ac,
            [&] { return "variants not convertible: " + show(s, a) + " / " + show(s, b) + " / " + show(s, c); });

      // Independent terms of the same type: symmetry and transitivity on whatever holds.
      TermPtr u = gen_.term(s.ctx_types, s.type), v = gen_.term(s.ctx_types, s.type);
      bool tu = conv(s.ctx, s.term, u, s.type_value), ut = conv(s.ctx, u, s.term, s.type_value);
      bool uv = conv(s.ctx, u, v, s.type_value), tv = conv(s.ctx, s.term, v, s.type_value);
      tally(r, tu == ut && (!(tu && uv) || tv),
            [&] { return "symmetry/transitivity: " + show(s, s.term) + " / " + show(s, u) + " / " + show(s, v); });

      // Congruence under application.
      STypePtr dom = gen_.random_type(1);
      STypePtr fn_type = stype_arrow(dom, s.type);
      Sample f = s;
      f.type = fn_type;
      f.type_value = checker_.eval(s.ctx, type_term(fn_type));
      f.term = gen_.term(s.ctx_types, fn_type);
      TermPtr arg = gen_.term(s.ctx_types, dom);
      Sample x = s;
      x.type = dom;
      x.type_value = checker_.eval(s.ctx, type_term(dom));
      x.term = arg;
      TermPtr lhs = app(variant(f, f.term), variant(x, arg));
      TermPtr rhs = app(variant(f, f.term), variant(x, arg));
      tally(r, conv(s.ctx, lhs, rhs, s.type_value),
            [&] { return "congruence: " + show(s, lhs) + " / " + show(s, rhs); });
    }
    return r;
  }

  // J on refl and qelim on qmk, with the coherence case held neutral so only the point rule
  // can make the two sides meet.
  PropertyResult computation_rules() {
    PropertyResult r{"computation rules", 0, 0, {}};
    std::size_t rounds = options_.defeq_triples / 2 + 1;
    for (std::size_t i = 0; i < rounds; ++i) {
      Sample s = sample(gen_, 2);

      unsigned k = gen_.below(4);
      TermPtr j = make(node::J{nat(), numeral(k), Bound{{"y", "p"}, type_term(s.type)}, s.term, numeral(k),
                               refl(nat(), numeral(k))});
      tally(r, checks(s.ctx, j, s.type_value) && conv(s.ctx, j, s.term, s.type_value),
            [&] { return "J on refl: " + show(s, j); });

      // Dependent motive over a neutral carrier: J A x (y p. Id A x y) (refl A x) x (refl A x).
      Context dep = s.ctx.extend("A", checker_.eval(s.ctx, universe(0)));
      dep = dep.extend("a", checker_.eval(dep, var(0)));
      TermPtr rx = refl(var(1), var(0));
      TermPtr jd = make(node::J{var(1), var(0), Bound{{"y", "p"}, id_type(var(3), var(2), var(1))}, rx, var(0), rx});
      ValuePtr jd_type = checker_.eval(dep, id_type(var(1), var(0), var(0)));
      tally(r, checks(dep, jd, jd_type) && conv(dep, jd, rx, jd_type),
            [&] { return "J on refl with dependent motive"; });

      // qelim with a non-constant point case and a coherence variable h in context.
      auto pt_ctx = s.ctx_types;
      pt_ctx.push_back(stype_nat());
      TermPtr pt = gen_.term(pt_ctx, s.type);
      TermPtr arg = gen_.term(s.ctx_types, stype_nat());
      TermPtr coh_type = qelim_coherence_type(s.type, pt);
      Context with_h = s.ctx.extend("h", checker_.eval(s.ctx, coh_type));
      TermPtr q = make(node::QElim{nat(), unit_relation(), Bound{{"q"}, type_term(s.type)}, Bound{{"a"}, shift(pt, 1, 1)},
                                   Bound{{"a", "b", "r"}, app(var(3, "h"), {var(2), var(1), var(0)})},
                                   make(node::QMk{nat(), unit_relation(), shift(arg, 1)})});
      TermPtr expected = shift(instantiate(pt, {arg}), 1);
      std::string why;
      bool typed = checks(with_h, q, s.type_value, &why);
      tally(r, typed && conv(with_h, q, expected, s.type_value), [&] {
        auto names = s.names;
        names.push_back("h");
        return (typed ? std::string("qelim on qmk: ") : "qelim rejected (" + why + "): ") + pretty(q, names);
      });
    }
    return r;
  }

  PropertyResult subject_reduction() {
    PropertyResult r{"subject reduction", 0, 0, {}};
    for (const auto& s : samples_) {
      TermPtr normal = nf(s.ctx, s.term, s.type_value);
      std::string why;
      tally(r, checks(s.ctx, normal, s.type_value, &why), [&] { return why + ": " + show(s, normal); });
    }
    if (options_.corpus_files.empty()) return r;

    Workspace ws(CheckerOptions{kDefaultMaxLevel, options_.eval});
    RunReport report = ws.check_files(options_.corpus_files);
    if (report.exit_code() != 0) {
      tally(r, false, [&] {
        return report.diagnostics.empty() ? std::string("corpus failed to load")
                                          : "corpus: " + report.diagnostics.front().diagnostic.message;
      });
      return r;
    }
    Context empty;
    for (const auto& [name, file] : ws.declared()) {
      const GlobalEntry* e = ws.globals().find(name);
      if (!e || e->kind != DeclKind::definition) continue;
      const Normalizer& n = ws.checker().normalizer();
      TermPtr normal = n.readback(empty.locals, e->value, e->type_value);
      std::string why;
      bool ok = true;
      try {
        ws.checker().check(empty, normal, e->type_value);
      } catch (const DiagnosticError& err) {
        ok = false;
        why = err.diagnostic().code + " " + err.diagnostic().message;
      }
      tally(r, ok, [&] { return name + ": " + why; });
    }
    return r;
  }

  PropertyResult round_trip() {
    PropertyResult r{"pretty round-trip", 0, 0, {}};
    GlobalLookup none = [](const std::string&) { return false; };
    for (const auto& s : samples_) {
      for (bool numerals : {true, false}) {
        std::string text = pretty(s.term, s.names, PrettyOptions{numerals});
        bool ok = false;
        std::string why;
        try {
          TermPtr back = elaborate_term(parse_term(lex(text)), s.names, none);
          ok = alpha_eq(back, s.term);
          if (!ok) why = "re-elaborated to " + pretty(back, s.names);
        } catch (const DiagnosticError& e) {
          why = e.diagnostic().code + " " + e.diagnostic().message;
        }
        tally(r, ok, [&] { return text + " (" + why + ")"; });
      }
    }
    return r;
  }

  SelftestOptions options_;
  GlobalEnv globals_;
  Checker checker_;
  TermGenerator gen_;
  std::vector<Sample> samples_;
};

}  // namespace

std::vector<PropertyResult> run_selftest(const SelftestOptions& options) { return Suite(options).run(); }

}  // namespace hitkernel
