#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hitkernel/elaborator.hpp"
#include "hitkernel/typechecker.hpp"

namespace hitkernel {

struct FileReport {
  std::string path;
  bool ok = true;
  std::size_t declarations = 0;
  std::size_t directives = 0;
};

struct ReportedDiagnostic {
  Diagnostic diagnostic;
  std::string file;  // empty when the diagnostic has no source position
};

/// Text produced by #check and #normalize.
struct DirectiveOutput {
  std::string file;
  int line = 0;
  std::string text;
};

struct RunReport {
  std::vector<FileReport> files;
  std::vector<ReportedDiagnostic> diagnostics;
  std::map<std::string, std::vector<std::string>> axioms;  // declaration -> axioms used
  std::vector<DirectiveOutput> outputs;
  double elapsed_ms = 0;
  bool usage_error = false;  // missing or unreadable input

  std::size_t error_count() const;
  /// 0 on success, 1 on check errors, 2 on usage/IO errors.
  int exit_code() const;
};

/// One global environment plus the files loaded into it. Files are loaded at most once;
/// `import name` resolves to `<root>/name.hk`.
class Workspace {
 public:
  explicit Workspace(CheckerOptions options = {});

  /// Checks the given files (and their imports) in dependency order. When `root` is empty each
  /// file's imports resolve against its own directory.
  RunReport check_files(const std::vector<std::string>& paths, const std::string& root = {});

  /// Loads a module from text, as if read from `name`. Imports resolve against `root`.
  RunReport check_source(const std::string& source, const std::string& name, const std::string& root = {});

  /// Parses and elaborates an expression against the loaded globals. Throws DiagnosticError.
  TermPtr expression(const std::string& text);

  /// Axioms reachable from a global through the bodies and types of the definitions it uses.
  std::set<std::string> axioms_used(const std::string& name);

  /// Verifies a manifest (JSON list of {name, type, file, symbols, anchor}) against the
  /// loaded globals. Returns one E-MANIFEST diagnostic per failing entry.
  std::vector<ReportedDiagnostic> check_manifest(const std::string& path);

  GlobalEnv& globals() { return globals_; }
  Checker& checker() { return checker_; }
  const std::string& file_name(int id) const;
  /// Declarations (def/axiom) in load order, with their source file.
  const std::vector<std::pair<std::string, std::string>>& declared() const { return declared_; }

 private:
  void load(const std::string& path, const std::string& root, RunReport& report);
  void run_module(const std::string& source, const std::string& path, const std::string& root, RunReport& report);
  int intern(const std::string& path);
  void record(RunReport& report, const Diagnostic& d);
  void finish(RunReport& report);

  GlobalEnv globals_;
  Checker checker_;
  std::vector<std::string> file_names_;
  std::set<std::string> loaded_;
  std::vector<std::string> loading_;
  std::vector<std::pair<std::string, std::string>> declared_;
  std::map<std::string, std::set<std::string>> audit_cache_;
};

/// Renders a report as a single JSON document.
std::string report_json(const RunReport& report);

}  // namespace hitkernel
