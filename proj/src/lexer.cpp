#include "nooplab/lexer.hpp"

#include <cctype>

#include "nooplab/diagnostics.hpp"

namespace nooplab {

namespace {

bool identStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool identCont(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

TokenKind keywordKind(std::string_view word) {
  if (word == "class") return TokenKind::KwClass;
  if (word == "extends") return TokenKind::KwExtends;
  if (word == "return") return TokenKind::KwReturn;
  if (word == "new") return TokenKind::KwNew;
  if (word == "this") return TokenKind::KwThis;
  if (word == "instanceof") return TokenKind::KwInstanceof;
  return TokenKind::Ident;
}

}  // namespace

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  size_t i = 0;

  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };

  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      bool contract = i + 2 < src.size() && src[i + 2] == '@';
      int tline = line, tcol = col;
      advance(contract ? 3 : 2);
      std::string text;
      while (i < src.size() && src[i] != '\n') {
        text.push_back(src[i]);
        advance(1);
      }
      if (contract) {
        if (!text.empty() && text.front() == ' ') text.erase(text.begin());
        out.push_back({TokenKind::ContractDoc, text, tline, tcol});
      }
      continue;
    }
    int tline = line, tcol = col;
    if (identStart(c)) {
      size_t start = i;
      while (i < src.size() && identCont(src[i])) advance(1);
      std::string word(src.substr(start, i - start));
      out.push_back({keywordKind(word), std::move(word), tline, tcol});
      continue;
    }
    TokenKind kind;
    switch (c) {
      case '{': kind = TokenKind::LBrace; break;
      case '}': kind = TokenKind::RBrace; break;
      case '(': kind = TokenKind::LParen; break;
      case ')': kind = TokenKind::RParen; break;
      case ';': kind = TokenKind::Semicolon; break;
      case ',': kind = TokenKind::Comma; break;
      case '.': kind = TokenKind::Dot; break;
      default:
        throw DiagnosticError({codes::SyntaxError,
                               "unexpected character '" + std::string(1, c) + "'", tline, tcol});
    }
    out.push_back({kind, std::string(1, c), tline, tcol});
    advance(1);
  }
  out.push_back({TokenKind::EndOfFile, "", line, col});
  return out;
}

}  // namespace nooplab
