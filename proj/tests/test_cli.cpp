#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>

#include <json.hpp>

#include "support.hpp"

namespace {

struct Result {
  int status;
  std::string out;
};

// Runs the CLI with stderr discarded.
Result run(const std::string& args) {
  std::string cmd = std::string("\"") + HITKERNEL_CLI + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string stdlib_args() {
  std::string out;
  for (const auto& p : hitkernel::testing::stdlib_paths()) out += " \"" + p + "\"";
  return out;
}

std::string negative(const std::string& name) { return std::string(" \"") + HITKERNEL_TEST_DIR + "/negative/" + name + "\""; }

}  // namespace

TEST_CASE("check exit codes") {
  CHECK(run("check" + stdlib_args()).status == 0);
  CHECK(run("check --root \"" HITKERNEL_STDLIB_DIR "\"" + negative("wrong_type.hk")).status == 1);
  CHECK(run("check /nonexistent.hk").status == 2);
  CHECK(run("check").status == 2);
  CHECK(run("frobnicate").status == 2);
}

TEST_CASE("check --json emits one parseable report") {
  Result r = run("check --json" + stdlib_args());
  CHECK(r.status == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["status"] == "ok");
  CHECK(doc["diagnostics"].empty());
  CHECK(doc["axioms"]["is_hprop_truncX"] == nlohmann::json::array({"funext"}));

  Result bad = run("check --json --root \"" HITKERNEL_STDLIB_DIR "\"" + negative("not_function.hk"));
  CHECK(bad.status == 1);
  auto err = nlohmann::json::parse(bad.out);
  REQUIRE(err["diagnostics"].size() == 1);
  CHECK(err["diagnostics"][0]["code"] == "E-NOTFN");
  CHECK(err["diagnostics"][0]["line"] == 3);
}

TEST_CASE("check --manifest") {
  CHECK(run("check --manifest \"" HITKERNEL_STDLIB_DIR "/manifest.json\"" + stdlib_args()).status == 0);
  CHECK(run("check --manifest /nonexistent.json" + stdlib_args()).status == 2);
}

TEST_CASE("normalize and typeof") {
  CHECK(run("normalize \"add 2 2\"").out == "4\n");
  CHECK(run("normalize zero").out == "0\n");
  CHECK(run("typeof truncX").out == "Type0 -> Type0\n");
  CHECK(run("typeof \"add 2\"").out == "Nat -> Nat\n");
  CHECK(run("normalize \"succ star\"").status == 1);
  CHECK(run("normalize \"(1,\"").status == 1);
}

TEST_CASE("normalize in a context of assumptions") {
  // Assumptions live in a separate file loaded after the library.
  auto dir = std::filesystem::temp_directory_path() / "hitkernel_cli_ctx";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "hyp.hk") << "axiom A : Type0\naxiom P : truncX A -> Type0\n"
                                   "axiom pP : (x : truncX A) -> is_prop (P x)\n"
                                   "axiom h : (a : A) -> P (i0 A a)\naxiom a : A\n";
  Result r = run("normalize --ctx" + stdlib_args() + " \"" + (dir / "hyp.hk").string() + "\" \"trunc_elim A P pP h (i0 A a)\"");
  std::filesystem::remove_all(dir);
  CHECK(r.status == 0);
  CHECK(r.out == "h a\n");
}

TEST_CASE("HITKERNEL_MAX_LEVEL") {
  auto file = std::filesystem::temp_directory_path() / "hitkernel_level.hk";
  std::ofstream(file) << "def t : Type1 := Type0\n";
  auto with_level = [&](const std::string& level) {
    std::string cmd = "HITKERNEL_MAX_LEVEL=" + level + " \"" + HITKERNEL_CLI + "\" check \"" + file.string() +
                      "\" >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  CHECK(with_level("4") == 0);
  CHECK(with_level("1") == 1);
  CHECK(with_level("nope") == 2);
  std::filesystem::remove(file);
}

TEST_CASE("selftest reports its property groups") {
  Result r = run("selftest --no-stdlib --count 100");
  CHECK(r.status == 0);
  std::size_t lines = 0;
  for (char c : r.out) lines += c == '\n';
  CHECK(lines >= 4);
  CHECK(run("selftest --no-stdlib --count 100 --mutate qelim-beta").status == 1);
}
