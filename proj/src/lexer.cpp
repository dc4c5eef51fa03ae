#include "plageval/lexer.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <ostream>
#include <sstream>

#include "plageval/error.hpp"

namespace plageval {

namespace {

constexpr std::array<std::string_view, 50> kKeywords = {
    "abstract",   "assert",       "boolean",   "break",      "byte",
    "case",       "catch",        "char",      "class",      "const",
    "continue",   "default",      "do",        "double",     "else",
    "enum",       "extends",      "final",     "finally",    "float",
    "for",        "goto",         "if",        "implements", "import",
    "instanceof", "int",          "interface", "long",       "native",
    "new",        "package",      "private",   "protected",  "public",
    "return",     "short",        "static",    "strictfp",   "super",
    "switch",     "synchronized", "this",      "throw",      "throws",
    "transient",  "try",          "void",      "volatile",   "while",
};

// Longest first so that a linear scan yields maximal munch.
constexpr std::array<std::string_view, 39> kOperators = {
    ">>>=", "<<=", ">>=", ">>>", "->", "++", "--", "&&", "||", "==",
    "!=",   "<=",  ">=",  "+=",  "-=", "*=", "/=", "&=", "|=", "^=",
    "%=",   "<<",  ">>",  "=",   ">",  "<",  "!",  "~",  "?",  ":",
    "+",    "-",   "*",   "/",   "&",  "|",  "^",  "%",  "@",
};

constexpr std::array<std::string_view, 11> kSeparators = {
    "...", "::", "(", ")", "{", "}", "[", "]", ";", ",", ".",
};

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

// Letters accepted in identifiers beyond ASCII. Covers the scripts Java
// source realistically uses; anything else outside a literal is rejected.
bool is_unicode_letter(char32_t c) {
  struct Range {
    char32_t lo, hi;
  };
  static constexpr Range kRanges[] = {
      {0x00A2, 0x00A5},  // currency symbols are Java letters
      {0x00AA, 0x00AA}, {0x00B5, 0x00B5}, {0x00BA, 0x00BA},
      {0x00C0, 0x00D6}, {0x00D8, 0x00F6}, {0x00F8, 0x02AF},
      {0x0370, 0x0373}, {0x0376, 0x0377}, {0x037B, 0x037D},
      {0x0386, 0x0386}, {0x0388, 0x03FF},  // Greek
      {0x0400, 0x0481}, {0x048A, 0x052F},  // Cyrillic
      {0x0531, 0x0556}, {0x0561, 0x0587},  // Armenian
      {0x05D0, 0x05EA},                    // Hebrew
      {0x0620, 0x064A},                    // Arabic
      {0x0904, 0x0939},                    // Devanagari
      {0x0E01, 0x0E30},                    // Thai
      {0x1E00, 0x1FFF},                    // Latin/Greek extended
      {0x20A0, 0x20C0},                    // currency symbols
      {0x3041, 0x3096}, {0x30A1, 0x30FA},  // kana
      {0x3400, 0x4DBF}, {0x4E00, 0x9FFF},  // CJK
      {0xAC00, 0xD7A3},                    // Hangul
  };
  return std::any_of(std::begin(kRanges), std::end(kRanges),
                     [c](const Range& r) { return c >= r.lo && c <= r.hi; });
}

bool is_ident_start(char32_t c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' ||
         c == '$' || (c >= 0x80 && is_unicode_letter(c));
}

bool is_digit(char32_t c) { return c >= '0' && c <= '9'; }

bool is_ident_part(char32_t c) { return is_ident_start(c) || is_digit(c); }

bool is_hex_digit(char32_t c) {
  return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

std::string describe(char32_t c) {
  std::ostringstream out;
  if (c >= 0x20 && c < 0x7F) {
    out << '\'' << static_cast<char>(c) << '\'';
  } else {
    out << "U+" << std::hex << std::uppercase << static_cast<std::uint32_t>(c);
  }
  return out.str();
}

class Scanner {
 public:
  Scanner(std::string_view src, Abstraction abstraction, std::string source_id)
      : src_(src), abstraction_(abstraction), source_id_(std::move(source_id)) {
    // A leading byte-order mark is not part of the program text.
    if (src_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
  }

  TokenSequence run() {
    std::vector<Token> tokens;
    while (skip_trivia()) {
      tokens.push_back(next_token());
    }
    return TokenSequence(std::move(tokens), source_id_, abstraction_);
  }

 private:
  struct Mark {
    std::size_t pos;
    int line;
    int column;
  };

  bool at_end() const { return pos_ >= src_.size(); }

  Mark mark() const { return {pos_, line_, column_}; }

  // Decodes the code point at `at` and reports its byte length.
  char32_t decode(std::size_t at, std::size_t* length) const {
    const auto b0 = static_cast<unsigned char>(src_[at]);
    if (b0 < 0x80) {
      *length = 1;
      return b0;
    }
    std::size_t n = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
      n = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      n = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      n = 4;
      cp = b0 & 0x07;
    } else {
      fail("LexError", "invalid UTF-8 byte", line_, column_);
    }
    if (at + n > src_.size()) fail("LexError", "truncated UTF-8 sequence", line_, column_);
    for (std::size_t i = 1; i < n; ++i) {
      const auto b = static_cast<unsigned char>(src_[at + i]);
      if ((b & 0xC0) != 0x80) fail("LexError", "invalid UTF-8 sequence", line_, column_);
      cp = (cp << 6) | (b & 0x3F);
    }
    *length = n;
    return cp;
  }

  char32_t peek(std::size_t ahead = 0) const {
    std::size_t at = pos_;
    std::size_t len = 0;
    for (std::size_t i = 0; i <= ahead; ++i) {
      if (at >= src_.size()) return U'\0';
      const char32_t c = decode(at, &len);
      if (i == ahead) return c;
      at += len;
    }
    return U'\0';
  }

  void advance() {
    std::size_t len = 0;
    const char32_t c = decode(pos_, &len);
    pos_ += len;
    if (c == '\n' || (c == '\r' && (at_end() || src_[pos_] != '\n'))) {
      ++line_;
      column_ = 1;
    } else if (c != '\r') {
      ++column_;
    }
  }

  [[noreturn]] void fail(const std::string& code, const std::string& what,
                         int line, int column) const {
    std::ostringstream msg;
    if (!source_id_.empty()) msg << source_id_ << ':';
    msg << line << ':' << column << ": " << what;
    throw LexError(code, msg.str(), line, column);
  }

  // Skips whitespace and comments; returns false at end of input.
  bool skip_trivia() {
    while (!at_end()) {
      const char32_t c = peek();
      if (c == ' ' || c == '\t' || c == '\f' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n' && peek() != '\r') advance();
      } else if (c == '/' && peek(1) == '*') {
        const Mark start = mark();
        advance();
        advance();
        for (;;) {
          if (at_end()) {
            fail("UnterminatedComment", "unterminated block comment",
                 start.line, start.column);
          }
          if (peek() == '*' && peek(1) == '/') {
            advance();
            advance();
            break;
          }
          advance();
        }
      } else {
        return true;
      }
    }
    return false;
  }

  Token make(TokenKind kind, const Mark& start) const {
    return Token{kind, std::string(src_.substr(start.pos, pos_ - start.pos)),
                 start.line, start.column};
  }

  Token next_token() {
    const Mark start = mark();
    const char32_t c = peek();

    if (is_ident_start(c)) return identifier(start);
    if (is_digit(c) || (c == '.' && is_digit(peek(1)))) return number(start);
    if (c == '"') return string_literal(start);
    if (c == '\'') return char_literal(start);

    const std::string_view rest = src_.substr(pos_);
    for (std::string_view sep : kSeparators) {
      if (rest.starts_with(sep)) return take(sep.size(), TokenKind::Separator, start);
    }
    for (std::string_view op : kOperators) {
      if (rest.starts_with(op)) return take(op.size(), TokenKind::Operator, start);
    }
    fail("LexError", "illegal character " + describe(c), start.line, start.column);
  }

  Token take(std::size_t bytes, TokenKind kind, const Mark& start) {
    for (std::size_t i = 0; i < bytes; ++i) advance();
    return make(kind, start);
  }

  Token identifier(const Mark& start) {
    while (!at_end() && is_ident_part(peek())) advance();
    Token token = make(TokenKind::Identifier, start);
    if (token.lexeme == "true" || token.lexeme == "false") {
      token.kind = TokenKind::BoolLiteral;
    } else if (token.lexeme == "null") {
      token.kind = TokenKind::NullLiteral;
    } else if (is_keyword(token.lexeme)) {
      token.kind = TokenKind::Keyword;
    }
    return token;
  }

  // Consumes digits accepted by `accept`, allowing embedded underscores.
  template <typename Pred>
  std::size_t digits(Pred accept) {
    std::size_t count = 0;
    while (!at_end() && (accept(peek()) || (count > 0 && peek() == '_'))) {
      if (peek() != '_') ++count;
      advance();
    }
    return count;
  }

  Token number(const Mark& start) {
    bool is_float = false;
    const char32_t c1 = peek(1);
    if (peek() == '0' && (c1 == 'x' || c1 == 'X' || c1 == 'b' || c1 == 'B')) {
      const bool hex = c1 == 'x' || c1 == 'X';
      advance();
      advance();
      const std::size_t n = hex ? digits(is_hex_digit)
                                : digits([](char32_t d) { return d == '0' || d == '1'; });
      if (n == 0) fail("LexError", "malformed numeric literal", start.line, start.column);
    } else {
      digits(is_digit);
      if (peek() == '.' && peek(1) != '.') {
        is_float = true;
        advance();
        digits(is_digit);
      }
      if (peek() == 'e' || peek() == 'E') {
        is_float = true;
        advance();
        if (peek() == '+' || peek() == '-') advance();
        if (digits(is_digit) == 0) {
          fail("LexError", "malformed exponent", start.line, start.column);
        }
      }
      const char32_t s = peek();
      if (s == 'f' || s == 'F' || s == 'd' || s == 'D') {
        is_float = true;
        advance();
      }
    }
    if (!is_float && (peek() == 'l' || peek() == 'L')) advance();
    if (!at_end() && is_ident_part(peek())) {
      fail("LexError", "malformed numeric literal", start.line, start.column);
    }
    return make(is_float ? TokenKind::FloatLiteral : TokenKind::IntegerLiteral, start);
  }

  void escape(const Mark& start) {
    advance();  // backslash
    if (at_end()) fail("UnterminatedLiteral", "unterminated literal", start.line, start.column);
    const char32_t e = peek();
    if (e == 'u') {
      while (peek() == 'u') advance();
      for (int i = 0; i < 4; ++i) {
        if (!is_hex_digit(peek())) {
          fail("LexError", "malformed unicode escape", line_, column_);
        }
        advance();
      }
      return;
    }
    static constexpr std::u32string_view kSimple = U"btnfrs\"'\\";
    if (kSimple.find(e) == std::u32string_view::npos && !(e >= '0' && e <= '7') &&
        e != '\n' && e != '\r') {
      fail("LexError", "invalid escape sequence \\" + describe(e), line_, column_);
    }
    advance();
  }

  Token string_literal(const Mark& start) {
    if (src_.substr(pos_, 3) == "\"\"\"") return text_block(start);
    advance();
    for (;;) {
      if (at_end() || peek() == '\n' || peek() == '\r') {
        fail("UnterminatedLiteral", "unterminated string literal", start.line,
             start.column);
      }
      const char32_t c = peek();
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\') {
        if (peek(1) == '\n' || peek(1) == '\r') {
          fail("UnterminatedLiteral", "unterminated string literal", start.line,
               start.column);
        }
        escape(start);
      } else {
        advance();
      }
    }
    return make(TokenKind::StringLiteral, start);
  }

  Token text_block(const Mark& start) {
    for (int i = 0; i < 3; ++i) advance();
    for (;;) {
      if (at_end()) {
        fail("UnterminatedLiteral", "unterminated text block", start.line, start.column);
      }
      if (src_.substr(pos_, 3) == "\"\"\"") {
        for (int i = 0; i < 3; ++i) advance();
        break;
      }
      if (peek() == '\\') {
        escape(start);
      } else {
        advance();
      }
    }
    return make(TokenKind::StringLiteral, start);
  }

  Token char_literal(const Mark& start) {
    advance();
    const char32_t c = peek();
    if (at_end() || c == '\n' || c == '\r' || c == '\'') {
      fail("UnterminatedLiteral", "malformed char literal", start.line, start.column);
    }
    if (c == '\\') {
      escape(start);
    } else {
      advance();
    }
    if (peek() != '\'') {
      fail("UnterminatedLiteral", "unterminated char literal", start.line, start.column);
    }
    advance();
    return make(TokenKind::CharLiteral, start);
  }

  std::string_view src_;
  Abstraction abstraction_;
  std::string source_id_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Keyword: return "KEYWORD";
    case TokenKind::Identifier: return "IDENTIFIER";
    case TokenKind::IntegerLiteral: return "INTEGER_LITERAL";
    case TokenKind::FloatLiteral: return "FLOAT_LITERAL";
    case TokenKind::StringLiteral: return "STRING_LITERAL";
    case TokenKind::CharLiteral: return "CHAR_LITERAL";
    case TokenKind::BoolLiteral: return "BOOL_LITERAL";
    case TokenKind::NullLiteral: return "NULL_LITERAL";
    case TokenKind::Operator: return "OPERATOR";
    case TokenKind::Separator: return "SEPARATOR";
  }
  return "?";
}

std::string_view to_string(Abstraction abstraction) {
  return abstraction == Abstraction::Category ? "category" : "lexeme";
}

Abstraction abstraction_from_string(std::string_view name) {
  if (name == "category" || name == "CATEGORY") return Abstraction::Category;
  if (name == "lexeme" || name == "LEXEME") return Abstraction::Lexeme;
  throw Error("UsageError", "unknown abstraction level: " + std::string(name));
}

std::string comparison_key(const Token& token, Abstraction abstraction) {
  switch (token.kind) {
    case TokenKind::Keyword:
    case TokenKind::Operator:
    case TokenKind::Separator:
      return token.lexeme;
    default:
      break;
  }
  std::string key(to_string(token.kind));
  if (abstraction == Abstraction::Lexeme) {
    key += ':';
    key += token.lexeme;
  }
  return key;
}

TokenSequence::TokenSequence(std::vector<Token> tokens, std::string source_id,
                             Abstraction abstraction)
    : tokens_(std::move(tokens)),
      source_id_(std::move(source_id)),
      abstraction_(abstraction) {}

std::string TokenSequence::key(std::size_t i) const {
  return comparison_key(tokens_.at(i), abstraction_);
}

std::vector<std::string> TokenSequence::keys() const {
  std::vector<std::string> out;
  out.reserve(tokens_.size());
  for (const Token& t : tokens_) out.push_back(comparison_key(t, abstraction_));
  return out;
}

std::vector<TokenKind> TokenSequence::kinds() const {
  std::vector<TokenKind> out;
  out.reserve(tokens_.size());
  for (const Token& t : tokens_) out.push_back(t.kind);
  return out;
}

TokenSequence tokenize(std::string_view source, const LexerConfig& config,
                       std::string source_id) {
  return Scanner(source, config.abstraction, std::move(source_id)).run();
}

TokenSequence tokenize_file(const std::string& path, const LexerConfig& config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("MissingFile", "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return tokenize(buf.str(), config, path);
}

void dump_tokens(std::ostream& out, const TokenSequence& tokens) {
  for (const Token& t : tokens.tokens()) {
    out << t.line << ':' << t.column << ' ' << to_string(t.kind) << ' ' << t.lexeme
        << '\n';
  }
}

}  // namespace plageval
