// Acceptance run: one PASS/FAIL line per criterion.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sys/wait.h>

#include <json.hpp>

#include "hitkernel/selftest.hpp"
#include "support.hpp"

using namespace hitkernel;
using namespace hitkernel::testing;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Cli {
  int status;
  std::string out;
};

Cli run_cli(const std::string& args) {
  std::string cmd = std::string("\"") + HITKERNEL_CLI + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string stdlib_args() {
  std::string out;
  for (const auto& p : stdlib_paths()) out += " \"" + p + "\"";
  return out;
}

int failures = 0;

void report(int id, const std::string& title, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const DiagnosticError& e) {
    detail = e.diagnostic().code + " " + e.diagnostic().message;
  } catch (const std::exception& e) {
    detail = e.what();
  }
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << " [" << id << "] " << title;
  if (!detail.empty()) std::cout << " -- " << detail;
  std::cout << std::endl;
}

// Corpus check through the command line: exit 0, no diagnostics, under 30 s, audit = {funext}.
bool corpus_check(std::string& detail) {
  auto start = Clock::now();
  Cli r = run_cli("check --json" + stdlib_args());
  double secs = seconds_since(start);
  auto doc = nlohmann::json::parse(r.out);
  auto audit = doc["axioms"]["is_hprop_truncX"];
  detail = "exit " + std::to_string(r.status) + ", " + std::to_string(doc["diagnostics"].size()) +
           " diagnostics, " + std::to_string(secs) + " s, is_hprop_truncX uses " + audit.dump();
  return r.status == 0 && doc["diagnostics"].empty() && secs < 30.0 && audit == nlohmann::json::array({"funext"});
}

bool judgmental_rules(std::string& detail) {
  Session s;
  if (s.load(stdlib_paths()).error_count() != 0) return false;
  s.assume("A", "Type0");
  s.assume("B", "Type0");
  s.assume("P", "truncX A -> Type0");
  s.assume("pP", "(x : truncX A) -> is_prop (P x)");
  s.assume("h", "(a : A) -> P (i0 A a)");
  s.assume("a", "A");
  s.assume("g", "A -> B");
  s.assume("w", "weakly_constant A B g");
  s.assume("X", "Nat -> Type0");
  s.assume("F", "(n : Nat) -> X n -> X (succ n)");
  s.assume("Q", "seq_colim X F -> Type0");
  s.assume("pt", "(n : Nat) (x : X n) -> Q (inclusion X F n x)");
  s.assume("co",
           "(n : Nat) (x : X n) -> Id (Q (inclusion X F n x)) (transport (seq_colim X F) Q (inclusion X F (succ n) (F n x)) "
           "(inclusion X F n x) (glue X F n x) (pt (succ n) (F n x))) (pt n x)");
  s.assume("ptB", "(n : Nat) -> X n -> B");
  s.assume("coB", "(n : Nat) (x : X n) -> Id B (ptB (succ n) (F n x)) (ptB n x)");
  s.assume("n", "Nat");
  s.assume("x", "X n");
  const std::pair<const char*, const char*> rules[] = {
      {"trunc_elim A P pP h (i0 A a)", "h a"},
      {"one_step_tr_rec A B g w (tr A a)", "g a"},
      {"seq_colim_elim X F Q pt co (inclusion X F n x)", "pt n x"},
      {"seq_colim_rec X F B ptB coB (inclusion X F n x)", "ptB n x"},
  };
  std::size_t ok = 0;
  for (const auto& [lhs, rhs] : rules) {
    if (s.defeq(lhs, rhs)) {
      ++ok;
    } else {
      detail += std::string("not definitional: ") + lhs + "; ";
    }
  }
  detail += std::to_string(ok) + "/4 rules hold by conversion with neutral arguments";
  return ok == 4;
}

bool universe_parity(std::string& detail) {
  Cli r = run_cli("typeof truncX");
  std::string out = r.out;
  while (!out.empty() && out.back() == '\n') out.pop_back();
  detail = "typeof truncX = " + out;
  TermPtr t = core(out);
  const auto* p = t->as<node::Pi>();
  bool shape = p && p->domain->is<node::Universe>() && p->domain->as<node::Universe>()->level == 0 &&
               p->codomain.body->is<node::Universe>() && p->codomain.body->as<node::Universe>()->level == 0;
  return r.status == 0 && shape;
}

bool theorem_statements(std::string& detail) {
  Workspace ws;
  if (ws.check_files(stdlib_paths()).error_count() != 0) return false;
  std::ifstream in(std::string(HITKERNEL_STDLIB_DIR) + "/manifest.json");
  auto doc = nlohmann::json::parse(in);
  const char* names[] = {"weakly_constant_ap", "is_prop_pi_eq", "glue_square", "to_eq_coh",
                         "is_hprop_truncX", "cocone_to_fun", "has_split_support_of_is_collapsible"};
  std::size_t ok = 0;
  Context empty;
  for (const char* name : names) {
    const GlobalEntry* g = ws.globals().find(name);
    bool matched = false;
    for (const auto& e : doc) {
      if (e["name"] != name || !g) continue;
      TermPtr stated = ws.expression(e["type"].get<std::string>());
      ws.checker().check_type(empty, stated);
      matched = ws.checker().normalizer().convertible_types(empty.locals, ws.checker().eval(empty, stated), g->type_value);
    }
    if (matched) {
      ++ok;
    } else {
      detail += std::string(name) + " mismatch; ";
    }
  }
  detail += std::to_string(ok) + "/7 statements convertible with the manifest";
  return ok == 7;
}

bool rep_glue_unfolding(std::string& detail) {
  Session s;
  if (s.load(stdlib_paths()).error_count() != 0) return false;
  s.assume("A", "Type0");
  s.assume("n", "Nat");
  s.assume("a", "A");
  bool ok = s.defeq("rep_glue A (succ n) a",
                    "concat (truncX A) (incl A (succ n) (rep_f A (succ n) a)) (incl A n (rep_f A n a)) (i0 A a) "
                    "(glue (truncX_seq A) (truncX_step A) n (rep_f A n a)) (rep_glue A n a)");
  detail = ok ? "rep_glue (succ n) a reduces to glue n (rep_f n a) . rep_glue n a" : "not definitional";
  return ok;
}

bool property_suite(std::string& detail) {
  SelftestOptions opts;
  opts.corpus_files = stdlib_paths();
  auto start = Clock::now();
  auto results = run_selftest(opts);
  double secs = seconds_since(start);
  bool ok = secs < 60.0;
  auto find = [&](const std::string& group) -> const PropertyResult* {
    for (const auto& r : results) {
      if (r.group == group) return &r;
    }
    return nullptr;
  };
  for (const auto& r : results) {
    ok = ok && r.failed == 0;
    detail += r.group + " " + std::to_string(r.passed) + "/" + std::to_string(r.passed + r.failed) + "; ";
  }
  const auto* idem = find("normalize idempotence");
  const auto* oracle = find("oracle agreement");
  const auto* sr = find("subject reduction");
  const auto* laws = find("definitional equality laws");
  ok = ok && idem && idem->passed >= 500 && oracle && oracle->passed >= 50 && sr && sr->passed > idem->passed &&
       laws && laws->passed > 0;
  detail += std::to_string(secs) + " s";
  return ok;
}

bool round_trip(std::string& detail) {
  RoundTrip r = stdlib_round_trip();
  detail = std::to_string(r.terms) + " terms, " + std::to_string(r.failures.size()) + " failures";
  if (!r.failures.empty()) detail += "; first: " + r.failures.front().substr(0, 200);
  return r.terms > 0 && r.failures.empty();
}

bool negative_controls(std::string& detail) {
  std::size_t total = 0, ok = 0;
  for (const auto& entry : fs::directory_iterator(std::string(HITKERNEL_TEST_DIR) + "/negative")) {
    if (entry.path().extension() != ".hk") continue;
    ++total;
    std::ifstream in(entry.path());
    std::string first;
    std::getline(in, first);
    const std::string tag = "-- expect: ";
    std::string expected = first.rfind(tag, 0) == 0 ? first.substr(tag.size()) : "?";
    Workspace ws;
    RunReport r = ws.check_files({entry.path().string()}, HITKERNEL_STDLIB_DIR);
    if (r.exit_code() == 1 && first_code(r) == expected) {
      ++ok;
    } else {
      detail += entry.path().filename().string() + " gave " + first_code(r) + "; ";
    }
  }
  detail += std::to_string(ok) + "/" + std::to_string(total) + " files fail with their documented code";
  return total >= 10 && ok == total;
}

}  // namespace

int main() {
  report(1, "corpus check and axiom audit", corpus_check);
  report(2, "judgmental computation rules of the derived eliminators", judgmental_rules);
  report(3, "truncation stays in the universe of its argument", universe_parity);
  report(4, "theorem statements match the manifest", theorem_statements);
  report(5, "definitional unfolding of iterated glue", rep_glue_unfolding);
  report(6, "kernel property suite", property_suite);
  report(7, "frontend round-trip on every library declaration", round_trip);
  report(8, "negative controls", negative_controls);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
