#include "hitkernel/driver.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hitkernel/lexer.hpp"
#include "hitkernel/parser.hpp"

namespace hitkernel {

namespace fs = std::filesystem;

namespace {

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

std::string canonical(const std::string& path) {
  std::error_code ec;
  auto p = fs::weakly_canonical(fs::path(path), ec);
  return ec ? path : p.string();
}

bool is_directive(DeclForm f) { return f != DeclForm::def && f != DeclForm::axiom; }

}  // namespace

std::size_t RunReport::error_count() const {
  std::size_t n = 0;
  for (const auto& d : diagnostics) n += d.diagnostic.severity == Severity::error;
  return n;
}

int RunReport::exit_code() const {
  if (usage_error) return 2;
  return error_count() == 0 ? 0 : 1;
}

Workspace::Workspace(CheckerOptions options) : checker_(globals_, options) {}

const std::string& Workspace::file_name(int id) const {
  static const std::string none;
  return id > 0 && static_cast<std::size_t>(id) <= file_names_.size() ? file_names_[id - 1] : none;
}

int Workspace::intern(const std::string& path) {
  for (std::size_t i = 0; i < file_names_.size(); ++i) {
    if (file_names_[i] == path) return static_cast<int>(i + 1);
  }
  file_names_.push_back(path);
  return static_cast<int>(file_names_.size());
}

void Workspace::record(RunReport& report, const Diagnostic& d) {
  report.diagnostics.push_back(ReportedDiagnostic{d, file_name(d.span.file)});
}

RunReport Workspace::check_files(const std::vector<std::string>& paths, const std::string& root) {
  auto start = std::chrono::steady_clock::now();
  RunReport report;
  for (const auto& p : paths) {
    if (!fs::is_regular_file(p)) {
      report.usage_error = true;
      record(report, Diagnostic{Severity::error, code::io, "cannot read file '" + p + "'", {}});
      continue;
    }
    std::string r = root.empty() ? fs::path(p).parent_path().string() : root;
    load(canonical(p), r.empty() ? "." : r, report);
  }
  finish(report);
  report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

RunReport Workspace::check_source(const std::string& source, const std::string& name, const std::string& root) {
  auto start = std::chrono::steady_clock::now();
  RunReport report;
  run_module(source, name, root.empty() ? "." : root, report);
  finish(report);
  report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

void Workspace::load(const std::string& path, const std::string& root, RunReport& report) {
  if (loaded_.count(path)) return;
  std::string source;
  if (!read_file(path, source)) {
    report.usage_error = true;
    record(report, Diagnostic{Severity::error, code::io, "cannot read file '" + path + "'", {}});
    return;
  }
  run_module(source, path, root, report);
}

void Workspace::run_module(const std::string& source, const std::string& path, const std::string& root,
                           RunReport& report) {
  loaded_.insert(path);
  loading_.push_back(path);
  int id = intern(path);
  FileReport file{path, true, 0, 0};
  std::size_t errors_before = report.error_count();

  ParsedFile parsed = parse(lex(source, id));
  for (const auto& imp : parsed.imports) {
    std::string target = canonical((fs::path(root) / (imp.name + ".hk")).string());
    bool cycle = false;
    for (const auto& l : loading_) cycle = cycle || l == target;
    if (cycle) {
      record(report, Diagnostic{Severity::error, code::import_cycle, "import cycle through '" + imp.name + "'", imp.span});
    } else if (!fs::is_regular_file(target)) {
      record(report, Diagnostic{Severity::error, code::import_cycle, "cannot find module '" + imp.name + "' under " + root,
                                imp.span});
    } else {
      load(target, root, report);
    }
  }
  for (const auto& d : parsed.diagnostics) record(report, d);

  GlobalLookup lookup = [this](const std::string& n) { return globals_.contains(n); };
  for (const auto& sd : parsed.decls) {
    (is_directive(sd.form) ? file.directives : file.declarations)++;
    try {
      CoreDecl d = elaborate_decl(sd, lookup);
      d.file = path;
      std::string out = checker_.check_declaration(d);
      if (sd.form == DeclForm::check || sd.form == DeclForm::normalize) {
        report.outputs.push_back(DirectiveOutput{path, sd.span.start_line, out});
      }
      if (!is_directive(sd.form)) declared_.emplace_back(d.name, path);
    } catch (const DiagnosticError& e) {
      Diagnostic diag = e.diagnostic();
      if (!diag.span.valid()) diag.span = sd.span;
      record(report, diag);
    }
  }
  file.ok = report.error_count() == errors_before;
  report.files.push_back(file);
  loading_.pop_back();
}

void Workspace::finish(RunReport& report) {
  for (const auto& f : report.files) {
    for (const auto& [name, file] : declared_) {
      if (file == f.path) {
        auto axioms = axioms_used(name);
        report.axioms[name] = std::vector<std::string>(axioms.begin(), axioms.end());
      }
    }
  }
}

std::set<std::string> Workspace::axioms_used(const std::string& name) {
  if (auto it = audit_cache_.find(name); it != audit_cache_.end()) return it->second;
  std::set<std::string> out;
  const GlobalEntry* e = globals_.find(name);
  if (!e) return out;
  audit_cache_[name] = {};  // globals are acyclic; this only guards malformed input
  if (e->kind == DeclKind::axiom) out.insert(name);
  for (const TermPtr& t : {e->type, e->body}) {
    if (!t) continue;
    for (const auto& g : referenced_globals(t)) {
      auto sub = axioms_used(g);
      out.insert(sub.begin(), sub.end());
    }
  }
  audit_cache_[name] = out;
  return out;
}

TermPtr Workspace::expression(const std::string& text) {
  int id = intern("<expression>");
  auto tokens = lex(text, id);
  SurfacePtr s = parse_term(tokens);
  return elaborate_term(s, {}, [this](const std::string& n) { return globals_.contains(n); });
}

std::vector<ReportedDiagnostic> Workspace::check_manifest(const std::string& path) {
  std::vector<ReportedDiagnostic> out;
  auto fail = [&](const std::string& msg) {
    out.push_back(ReportedDiagnostic{Diagnostic{Severity::error, code::manifest, msg, {}}, path});
  };
  std::string text;
  if (!read_file(path, text)) {
    fail("cannot read manifest");
    return out;
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(std::string("manifest is not valid JSON: ") + e.what());
    return out;
  }
  if (!doc.is_array()) {
    fail("manifest must be a JSON array");
    return out;
  }
  for (const auto& entry : doc) {
    for (const char* field : {"name", "type", "file", "symbols", "anchor"}) {
      if (!entry.contains(field)) fail(std::string("manifest entry lacks field '") + field + "'");
    }
    if (!entry.contains("name") || !entry.contains("type") || !entry.contains("file")) continue;
    std::string name = entry["name"].get<std::string>();
    const GlobalEntry* g = globals_.find(name);
    if (!g) {
      fail("'" + name + "' is not a checked declaration");
      continue;
    }
    if (fs::path(g->file).filename().string() != entry["file"].get<std::string>()) {
      fail("'" + name + "' is declared in " + fs::path(g->file).filename().string() + ", not " +
           entry["file"].get<std::string>());
    }
    try {
      TermPtr ty = expression(entry["type"].get<std::string>());
      Context empty;
      checker_.check_type(empty, ty);
      if (!checker_.normalizer().convertible_types(empty.locals, checker_.eval(empty, ty), g->type_value)) {
        fail("type of '" + name + "' does not match the manifest");
      }
    } catch (const DiagnosticError& e) {
      fail("manifest type of '" + name + "' does not check: " + e.diagnostic().message);
    }
  }
  return out;
}

std::string report_json(const RunReport& report) {
  using nlohmann::json;
  json files = json::array();
  for (const auto& f : report.files) {
    files.push_back({{"path", f.path},
                     {"status", f.ok ? "ok" : "error"},
                     {"declarations", f.declarations},
                     {"directives", f.directives}});
  }
  json diags = json::array();
  for (const auto& d : report.diagnostics) {
    diags.push_back({{"severity", d.diagnostic.severity == Severity::error ? "error" : "warning"},
                     {"code", d.diagnostic.code},
                     {"message", d.diagnostic.message},
                     {"file", d.file},
                     {"line", d.diagnostic.span.start_line},
                     {"col", d.diagnostic.span.start_col}});
  }
  json axioms = json::object();
  for (const auto& [name, used] : report.axioms) axioms[name] = used;
  json doc = {{"status", report.exit_code() == 0 ? "ok" : "error"},
              {"files", files},
              {"diagnostics", diags},
              {"axioms", axioms},
              {"elapsed_ms", report.elapsed_ms}};
  return doc.dump(2);
}

}  // namespace hitkernel
