#pragma once

#include <stdexcept>
#include <string>

#include "hitkernel/syntax.hpp"

namespace hitkernel {

enum class Severity { error, warning };

/// Stable diagnostic codes.
namespace code {
inline constexpr const char* unbound = "E-UNBOUND";
inline constexpr const char* mismatch = "E-MISMATCH";
inline constexpr const char* not_function = "E-NOTFN";
inline constexpr const char* not_pair = "E-NOTPAIR";
inline constexpr const char* universe = "E-UNIVERSE";
inline constexpr const char* cannot_infer = "E-NOINFER";
inline constexpr const char* duplicate = "E-DUP";
inline constexpr const char* assert_failed = "E-ASSERT";
inline constexpr const char* lex = "E-LEX";
inline constexpr const char* parse = "E-PARSE";
inline constexpr const char* arity = "E-ARITY";
inline constexpr const char* io = "E-IO";
inline constexpr const char* import_cycle = "E-IMPORT";
inline constexpr const char* manifest = "E-MANIFEST";
}  // namespace code

struct Diagnostic {
  Severity severity = Severity::error;
  std::string code;
  std::string message;
  Span span;
};

/// Thrown by the frontend and the checker; caught at declaration granularity by the driver.
class DiagnosticError : public std::runtime_error {
 public:
  explicit DiagnosticError(Diagnostic d) : std::runtime_error(d.message), diagnostic_(std::move(d)) {}
  DiagnosticError(std::string code, std::string message, Span span)
      : DiagnosticError(Diagnostic{Severity::error, std::move(code), std::move(message), span}) {}

  const Diagnostic& diagnostic() const { return diagnostic_; }
  Diagnostic& diagnostic() { return diagnostic_; }

 private:
  Diagnostic diagnostic_;
};

}  // namespace hitkernel
