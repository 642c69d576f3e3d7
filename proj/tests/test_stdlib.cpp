#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "support.hpp"

using namespace hitkernel;
using namespace hitkernel::testing;
namespace fs = std::filesystem;

namespace {

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string expected_code(const std::string& path) {
  std::string first;
  std::getline(std::ifstream(path) >> std::ws, first);
  const std::string tag = "-- expect: ";
  return first.rfind(tag, 0) == 0 ? first.substr(tag.size()) : "";
}

}  // namespace

TEST_CASE("the library checks with every directive passing") {
  Workspace ws;
  RunReport r = ws.check_files(stdlib_paths());
  for (const auto& d : r.diagnostics) INFO(d.diagnostic.message);
  CHECK(r.error_count() == 0);
  CHECK(r.exit_code() == 0);
  REQUIRE(r.files.size() == 5);
  std::size_t directives = 0;
  for (const auto& f : r.files) directives += f.directives;
  CHECK(directives >= 20);
  CHECK(r.axioms.at("is_hprop_truncX") == std::vector<std::string>{"funext"});
}

TEST_CASE("the manifest matches the checked library") {
  Workspace ws;
  REQUIRE(ws.check_files(stdlib_paths()).error_count() == 0);
  std::string manifest = std::string(HITKERNEL_STDLIB_DIR) + "/manifest.json";
  auto problems = ws.check_manifest(manifest);
  for (const auto& p : problems) INFO(p.diagnostic.message);
  CHECK(problems.empty());

  auto doc = nlohmann::json::parse(read(manifest));
  CHECK(doc.size() >= 40);
  for (const char* name : {"weakly_constant_ap", "is_prop_pi_eq", "glue_square", "to_eq_coh", "is_hprop_truncX",
                           "cocone_to_fun", "has_split_support_of_is_collapsible", "trunc_elim", "truncX"}) {
    bool found = false;
    for (const auto& e : doc) found = found || e["name"] == name;
    INFO(name);
    CHECK(found);
  }
}

TEST_CASE("a tampered manifest is rejected") {
  Workspace ws;
  REQUIRE(ws.check_files(stdlib_paths()).error_count() == 0);
  auto doc = nlohmann::json::parse(read(std::string(HITKERNEL_STDLIB_DIR) + "/manifest.json"));
  for (auto& e : doc) {
    if (e["name"] == "glue_square") e["type"] = "(A : Type0) -> Type0";
    if (e["name"] == "concat") e["file"] = "trunc.hk";
  }
  doc.push_back({{"name", "no_such_lemma"}, {"type", "Nat"}, {"file", "prelude.hk"}, {"symbols", {}}, {"anchor", ""}});
  fs::path tmp = fs::temp_directory_path() / "hitkernel_tampered_manifest.json";
  std::ofstream(tmp) << doc.dump(2);
  auto problems = ws.check_manifest(tmp.string());
  fs::remove(tmp);
  REQUIRE(problems.size() == 3);
  for (const auto& p : problems) CHECK(p.diagnostic.code == "E-MANIFEST");
}

TEST_CASE("checking is deterministic") {
  auto run = [] {
    Workspace ws;
    RunReport r = ws.check_files(stdlib_paths());
    r.elapsed_ms = 0;
    std::string text = report_json(r);
    for (const auto& o : r.outputs) text += o.text;
    return text;
  };
  CHECK(run() == run());
}

TEST_CASE("directive output") {
  Workspace ws;
  RunReport r = ws.check_files(stdlib_paths());
  bool saw = false;
  for (const auto& o : r.outputs) saw = saw || o.text == "truncX : Type0 -> Type0";
  CHECK(saw);
}

TEST_CASE("negative controls fail with their documented codes") {
  std::size_t count = 0;
  for (const auto& entry : fs::directory_iterator(std::string(HITKERNEL_TEST_DIR) + "/negative")) {
    if (entry.path().extension() != ".hk") continue;
    ++count;
    std::string expected = expected_code(entry.path().string());
    Workspace ws;
    RunReport r = ws.check_files({entry.path().string()}, HITKERNEL_STDLIB_DIR);
    INFO(entry.path().filename().string());
    REQUIRE_FALSE(expected.empty());
    CHECK(r.exit_code() == 1);
    CHECK(first_code(r) == expected);
  }
  CHECK(count >= 10);
}

TEST_CASE("import cycles are reported") {
  fs::path dir = fs::temp_directory_path() / "hitkernel_cycle";
  fs::create_directories(dir);
  std::ofstream(dir / "a.hk") << "import b\ndef x : Nat := 0\n";
  std::ofstream(dir / "b.hk") << "import a\ndef y : Nat := 0\n";
  Workspace ws;
  RunReport r = ws.check_files({(dir / "a.hk").string()});
  fs::remove_all(dir);
  CHECK(first_code(r) == "E-IMPORT");
}

TEST_CASE("missing input files are usage errors") {
  Workspace ws;
  RunReport r = ws.check_files({"/nonexistent/file.hk"});
  CHECK(first_code(r) == "E-IO");
  CHECK(r.exit_code() == 2);
}
