// Command-line driver: check files, print normal forms and types, run the kernel self-test.

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "hitkernel/driver.hpp"
#include "hitkernel/pretty.hpp"
#include "hitkernel/selftest.hpp"

using namespace hitkernel;

namespace {

const char* kStdlibFiles[] = {"prelude.hk", "one_step.hk", "seq_colim.hk", "trunc.hk", "corollaries.hk"};

std::string stdlib_dir() {
  if (const char* env = std::getenv("HITKERNEL_STDLIB")) return env;
  return HITKERNEL_STDLIB_DIR;
}

std::vector<std::string> stdlib_files() {
  std::vector<std::string> out;
  for (const char* f : kStdlibFiles) out.push_back((std::filesystem::path(stdlib_dir()) / f).string());
  return out;
}

void print_diagnostics(const RunReport& report, std::ostream& out) {
  for (const auto& d : report.diagnostics) {
    const auto& diag = d.diagnostic;
    if (!d.file.empty()) {
      out << d.file;
      if (diag.span.valid()) out << ":" << diag.span.start_line << ":" << diag.span.start_col;
      out << ": ";
    }
    out << (diag.severity == Severity::error ? "error" : "warning") << "[" << diag.code << "]: " << diag.message
        << "\n";
  }
}

int cmd_check(const std::vector<std::string>& files, const std::string& root, const std::string& manifest,
              bool json, const CheckerOptions& options) {
  Workspace ws(options);
  RunReport report = ws.check_files(files, root);
  if (!manifest.empty() && !report.usage_error) {
    if (!std::filesystem::is_regular_file(manifest)) {
      report.usage_error = true;
      report.diagnostics.push_back({Diagnostic{Severity::error, code::io, "cannot read manifest '" + manifest + "'", {}}, ""});
    } else {
      for (auto& d : ws.check_manifest(manifest)) report.diagnostics.push_back(std::move(d));
    }
  }
  if (json) {
    std::cout << report_json(report) << "\n";
  } else {
    for (const auto& o : report.outputs) std::cout << o.file << ":" << o.line << ": " << o.text << "\n";
    print_diagnostics(report, std::cerr);
    std::size_t decls = 0, directives = 0;
    for (const auto& f : report.files) {
      decls += f.declarations;
      directives += f.directives;
    }
    std::cout << report.files.size() << " file(s), " << decls << " declaration(s), " << directives
              << " directive(s), " << report.error_count() << " error(s) in " << static_cast<long>(report.elapsed_ms)
              << " ms\n";
  }
  return report.exit_code();
}

// `normalize` and `typeof`: load a context, then elaborate and check one expression.
int cmd_expression(std::vector<std::string> ctx, std::string expr, bool want_type, const CheckerOptions& options) {
  if (expr.empty()) {
    if (ctx.empty()) {
      std::cerr << "error: missing expression\n";
      return 2;
    }
    expr = ctx.back();
    ctx.pop_back();
  }
  if (ctx.empty()) ctx = stdlib_files();
  Workspace ws(options);
  RunReport report = ws.check_files(ctx);
  if (report.exit_code() != 0) {
    print_diagnostics(report, std::cerr);
    return report.exit_code();
  }
  try {
    TermPtr t = ws.expression(expr);
    Context empty;
    ValuePtr ty = ws.checker().infer(empty, t);
    if (want_type) {
      std::cout << pretty(ws.checker().quote_type(empty, ty)) << "\n";
    } else {
      std::cout << pretty(ws.checker().normalize(empty, t)) << "\n";
    }
  } catch (const DiagnosticError& e) {
    const auto& d = e.diagnostic();
    std::cerr << "error[" << d.code << "]: " << d.message << "\n";
    return 1;
  }
  return 0;
}

int cmd_selftest(std::uint64_t seed, std::size_t count, const std::string& mutate, bool with_stdlib) {
  SelftestOptions opts;
  opts.seed = seed;
  opts.generated_terms = count;
  if (mutate == "qelim-beta") opts.eval.qelim_point_beta = false;
  if (mutate == "j-beta") opts.eval.j_refl_beta = false;
  if (with_stdlib) opts.corpus_files = stdlib_files();
  bool ok = true;
  for (const auto& r : run_selftest(opts)) {
    std::cout << (r.failed == 0 ? "PASS " : "FAIL ") << r.group << ": " << r.passed << " passed, " << r.failed
              << " failed\n";
    for (const auto& f : r.failures) std::cout << "  counterexample: " << f << "\n";
    ok = ok && r.failed == 0;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hitkernel: a small type checker for type theory with quotients"};
  app.require_subcommand(1);

  bool json = false;
  std::string root, manifest;
  std::vector<std::string> files;
  auto* check = app.add_subcommand("check", "Check source files");
  check->add_flag("--json", json, "Print the run report as JSON");
  check->add_option("--root", root, "Directory that imports resolve against");
  check->add_option("--manifest", manifest, "Verify a declaration manifest after checking");
  check->add_option("files", files, "Source files")->required();

  std::vector<std::string> ctx;
  std::string expr;
  auto* normalize = app.add_subcommand("normalize", "Print the normal form of an expression");
  auto* type_of = app.add_subcommand("typeof", "Print the type of an expression");
  for (auto* sub : {normalize, type_of}) {
    sub->add_option("--ctx", ctx, "Files to load first (default: the shipped library)");
    sub->add_option("expr", expr, "Expression");
  }

  std::uint64_t seed = SelftestOptions{}.seed;
  std::size_t count = SelftestOptions{}.generated_terms;
  std::string mutate;
  bool no_stdlib = false;
  auto* selftest = app.add_subcommand("selftest", "Run the kernel property suites");
  selftest->add_option("--seed", seed, "Generator seed");
  selftest->add_option("--count", count, "Number of generated terms");
  selftest->add_option("--mutate", mutate, "Disable a computation rule (qelim-beta, j-beta)")
      ->check(CLI::IsMember({"qelim-beta", "j-beta"}));
  selftest->add_flag("--no-stdlib", no_stdlib, "Skip subject reduction over the shipped library");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CheckerOptions options;
  if (const char* env = std::getenv("HITKERNEL_MAX_LEVEL")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (!*env || *end || v > 1000) {
      std::cerr << "error: HITKERNEL_MAX_LEVEL must be a small non-negative integer\n";
      return 2;
    }
    options.max_level = static_cast<unsigned>(v);
  }

  if (*check) return cmd_check(files, root, manifest, json, options);
  if (*normalize) return cmd_expression(ctx, expr, false, options);
  if (*type_of) return cmd_expression(ctx, expr, true, options);
  return cmd_selftest(seed, count, mutate, !no_stdlib);
}
