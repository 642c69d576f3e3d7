#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hitkernel/diagnostic.hpp"

namespace hitkernel {

enum class TokenKind { identifier, keyword, symbol, number, directive, error };

struct Token {
  TokenKind kind;
  std::string lexeme;
  Span span;  // end column is one past the last character
};

/// Splits source text into tokens. Whitespace and `--` line comments are dropped; characters
/// outside the language produce `error` tokens rather than aborting.
std::vector<Token> lex(std::string_view source, int file = 0);

/// One E-LEX diagnostic per error token.
std::vector<Diagnostic> lex_errors(const std::vector<Token>& tokens);

bool is_keyword(std::string_view word);

}  // namespace hitkernel
