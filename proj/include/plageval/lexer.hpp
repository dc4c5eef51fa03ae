#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace plageval {

enum class TokenKind : std::uint8_t {
  Keyword,
  Identifier,
  IntegerLiteral,
  FloatLiteral,
  StringLiteral,
  CharLiteral,
  BoolLiteral,
  NullLiteral,
  Operator,
  Separator,
};

std::string_view to_string(TokenKind kind);

/// Granularity used when tokens are compared by the detectors.
///
/// Category: identifiers and literals collapse to their kind, so renaming a
/// variable or changing a constant does not change the comparison key.
/// Keywords, operators and separators keep their lexeme in both modes.
/// Lexeme: every token is compared by kind and exact source text.
enum class Abstraction : std::uint8_t { Category, Lexeme };

std::string_view to_string(Abstraction abstraction);
Abstraction abstraction_from_string(std::string_view name);

struct Token {
  TokenKind kind;
  std::string lexeme;
  int line;
  int column;  // 1-based, counted in code points

  bool operator==(const Token&) const = default;
};

struct LexerConfig {
  Abstraction abstraction = Abstraction::Category;
};

class TokenSequence {
 public:
  TokenSequence() = default;
  TokenSequence(std::vector<Token> tokens, std::string source_id,
                Abstraction abstraction);

  const std::vector<Token>& tokens() const noexcept { return tokens_; }
  const std::string& source_id() const noexcept { return source_id_; }
  Abstraction abstraction() const noexcept { return abstraction_; }
  std::size_t size() const noexcept { return tokens_.size(); }
  bool empty() const noexcept { return tokens_.empty(); }

  /// Comparison key of token `i` under this sequence's abstraction level.
  std::string key(std::size_t i) const;
  std::vector<std::string> keys() const;
  std::vector<TokenKind> kinds() const;

 private:
  std::vector<Token> tokens_;
  std::string source_id_;
  Abstraction abstraction_ = Abstraction::Category;
};

std::string comparison_key(const Token& token, Abstraction abstraction);

/// Tokenizes a Java-subset source text. Comments and whitespace are
/// dropped; everything else becomes a token in source order.
///
/// Throws LexError with code "LexError" for a character that is illegal
/// outside literals and comments, "UnterminatedLiteral" for a string or
/// char literal without its closing quote on the same line, and
/// "UnterminatedComment" for a block comment that runs to end of input.
TokenSequence tokenize(std::string_view source, const LexerConfig& config = {},
                       std::string source_id = {});

/// Reads a UTF-8 file and tokenizes it; the path becomes the source id.
TokenSequence tokenize_file(const std::string& path,
                            const LexerConfig& config = {});

/// Writes one `line:column KIND lexeme` record per token.
void dump_tokens(std::ostream& out, const TokenSequence& tokens);

}  // namespace plageval
