#include "lexer.hpp"

#include <algorithm>
#include <cstdint>

namespace paramspec::dsl {

namespace {

bool ident_start(unsigned char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
         c == '_' || c == '$';
}

bool ident_char(unsigned char c) { return ident_start(c) || c == '\'' || c == '.'; }

// Length of the UTF-8 sequence starting at text[i], or 0 if invalid.
std::size_t utf8_length(std::string_view text, std::size_t i) {
  const auto c = static_cast<unsigned char>(text[i]);
  std::size_t n = 0;
  std::uint32_t cp = 0;
  if (c < 0x80) return 1;
  if ((c & 0xE0) == 0xC0) {
    n = 2;
    cp = c & 0x1F;
  } else if ((c & 0xF0) == 0xE0) {
    n = 3;
    cp = c & 0x0F;
  } else if ((c & 0xF8) == 0xF0) {
    n = 4;
    cp = c & 0x07;
  } else {
    return 0;
  }
  if (i + n > text.size()) return 0;
  for (std::size_t k = 1; k < n; ++k) {
    const auto d = static_cast<unsigned char>(text[i + k]);
    if ((d & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (d & 0x3F);
  }
  static constexpr std::uint32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[n] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
  return n;
}

}  // namespace

std::string_view describe(Tok kind) {
  switch (kind) {
    case Tok::Ident: return "identifier";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Arrow: return "'->'";
    case Tok::Equals: return "'='";
    case Tok::End: return "end of input";
  }
  return "token";
}

void require_utf8(std::string_view text) {
  SourceLocation loc;
  for (std::size_t i = 0; i < text.size();) {
    const std::size_t n = utf8_length(text, i);
    if (n == 0) throw Error(ErrorKind::SyntaxError, "invalid UTF-8", loc);
    if (text[i] == '\n') {
      ++loc.line;
      loc.column = 1;
    } else {
      ++loc.column;
    }
    i += n;
  }
}

std::vector<Token> lex(std::string_view text) {
  require_utf8(text);
  std::vector<Token> out;
  SourceLocation loc;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      const auto c = static_cast<unsigned char>(text[i]);
      if (c == '\n') {
        ++loc.line;
        loc.column = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++loc.column;
      }
    }
  };
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    const SourceLocation start = loc;
    auto single = [&](Tok kind) {
      out.push_back({kind, std::string(1, static_cast<char>(c)), start});
      advance(1);
    };
    switch (c) {
      case '{': single(Tok::LBrace); continue;
      case '}': single(Tok::RBrace); continue;
      case '(': single(Tok::LParen); continue;
      case ')': single(Tok::RParen); continue;
      case ',': single(Tok::Comma); continue;
      case ':': single(Tok::Colon); continue;
      case '=': single(Tok::Equals); continue;
      default: break;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", start});
      advance(2);
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), start});
      advance(j - i);
      continue;
    }
    const std::size_t n = utf8_length(text, i);
    throw Error(ErrorKind::SyntaxError,
                "unexpected character '" + std::string(text.substr(i, n)) + "'", start);
  }
  out.push_back({Tok::End, "", loc});
  return out;
}

const Token& Cursor::peek(std::size_t ahead) const {
  const std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
  return tokens_[i];
}

const Token& Cursor::next() {
  const Token& t = tokens_[pos_];
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return t;
}

const Token& Cursor::expect(Tok kind) {
  if (!at(kind)) {
    fail("expected " + std::string(describe(kind)) + ", found " +
         (peek().kind == Tok::Ident ? "'" + peek().text + "'"
                                    : std::string(describe(peek().kind))));
  }
  return next();
}

const Token& Cursor::expect_word(std::string_view word) {
  if (!at_word(word)) {
    fail("expected '" + std::string(word) + "', found " +
         (peek().kind == Tok::End ? std::string("end of input") : "'" + peek().text + "'"));
  }
  return next();
}

bool Cursor::accept(Tok kind) {
  if (!at(kind)) return false;
  next();
  return true;
}

bool Cursor::accept_word(std::string_view word) {
  if (!at_word(word)) return false;
  next();
  return true;
}

void Cursor::fail(const std::string& msg) const {
  throw Error(ErrorKind::SyntaxError, msg, peek().loc);
}

}  // namespace paramspec::dsl
