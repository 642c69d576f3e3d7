#include "hitkernel/lexer.hpp"

#include <array>

namespace hitkernel {

namespace {

constexpr std::array kKeywords = {"def", "axiom", "fun", "let", "in", "import"};
constexpr std::array kDirectives = {"#check", "#normalize", "#assert_defeq", "#assert_type"};

bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9') || c == '\''; }
bool digit(char c) { return c >= '0' && c <= '9'; }

// Length in bytes of the UTF-8 sequence starting with `lead` (1 for invalid leads).
std::size_t utf8_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

class Lexer {
 public:
  Lexer(std::string_view src, int file) : src_(src), file_(file) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n' || c == ' ' || c == '\t' || c == '\r') {
        advance(1);
        continue;
      }
      if (c == '-' && peek(1) == '-') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance(1);
        continue;
      }
      start();
      if (ident_start(c)) {
        std::size_t n = 0;
        while (pos_ + n < src_.size() && ident_char(src_[pos_ + n])) ++n;
        std::string word(src_.substr(pos_, n));
        advance(n);
        TokenKind kind = is_keyword(word) ? TokenKind::keyword : TokenKind::identifier;
        out.push_back(finish(kind, std::move(word)));
      } else if (digit(c)) {
        std::size_t n = 0;
        while (pos_ + n < src_.size() && digit(src_[pos_ + n])) ++n;
        std::string digits(src_.substr(pos_, n));
        advance(n);
        out.push_back(finish(TokenKind::number, std::move(digits)));
      } else if (c == '#') {
        std::size_t n = 1;
        while (pos_ + n < src_.size() && ident_char(src_[pos_ + n])) ++n;
        std::string word(src_.substr(pos_, n));
        advance(n);
        bool known = false;
        for (const char* d : kDirectives) known = known || word == d;
        TokenKind kind = known ? TokenKind::directive : TokenKind::error;
        out.push_back(finish(kind, std::move(word)));
      } else if (auto sym = symbol_length(); sym > 0) {
        std::string s(src_.substr(pos_, sym));
        advance(sym);
        out.push_back(finish(TokenKind::symbol, std::move(s)));
      } else {
        std::size_t n = std::min(utf8_length(static_cast<unsigned char>(c)), src_.size() - pos_);
        std::string bad(src_.substr(pos_, n));
        advance(n);
        out.push_back(finish(TokenKind::error, std::move(bad)));
      }
    }
    return out;
  }

 private:
  char peek(std::size_t k) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }

  std::size_t symbol_length() const {
    char c = src_[pos_];
    char d = peek(1);
    if ((c == ':' && d == '=') || (c == '=' && d == '>') || (c == '-' && d == '>')) return 2;
    switch (c) {
      case '(': case ')': case '[': case ']': case ',': case ':': case '*':
        return 1;
      default:
        return 0;
    }
  }

  // Columns count code points, so a multi-byte character advances the column once.
  void advance(std::size_t bytes) {
    for (std::size_t i = 0; i < bytes && pos_ < src_.size(); ++i, ++pos_) {
      unsigned char c = static_cast<unsigned char>(src_[pos_]);
      if (c == '\n') {
        ++line_;
        col_ = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++col_;
      }
    }
  }

  void start() {
    start_line_ = line_;
    start_col_ = col_;
  }

  Token finish(TokenKind kind, std::string lexeme) const {
    return Token{kind, std::move(lexeme), Span{file_, start_line_, start_col_, line_, col_}};
  }

  std::string_view src_;
  int file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  int start_line_ = 1;
  int start_col_ = 1;
};

}  // namespace

bool is_keyword(std::string_view word) {
  for (const char* k : kKeywords) {
    if (word == k) return true;
  }
  return false;
}

std::vector<Token> lex(std::string_view source, int file) { return Lexer(source, file).run(); }

std::vector<Diagnostic> lex_errors(const std::vector<Token>& tokens) {
  std::vector<Diagnostic> out;
  for (const auto& t : tokens) {
    if (t.kind != TokenKind::error) continue;
    std::string what = t.lexeme.size() > 1 && t.lexeme[0] == '#' ? "unknown directive '" + t.lexeme + "'"
                                                                  : "unexpected character '" + t.lexeme + "'";
    out.push_back(Diagnostic{Severity::error, code::lex, what, t.span});
  }
  return out;
}

}  // namespace hitkernel
