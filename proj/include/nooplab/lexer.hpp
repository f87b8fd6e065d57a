#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace nooplab {

enum class TokenKind {
  Ident,
  KwClass,
  KwExtends,
  KwReturn,
  KwNew,
  KwThis,
  KwInstanceof,
  LBrace,
  RBrace,
  LParen,
  RParen,
  Semicolon,
  Comma,
  Dot,
  ContractDoc,  // one //@ comment line, text without the marker
  EndOfFile,
};

struct Token {
  TokenKind kind;
  std::string text;
  int line = 1;
  int col = 1;
};

// Tokenizes UTF-8 source. `//` comments run to end of line; `//@` comments
// are kept as ContractDoc tokens. Throws DiagnosticError on unexpected bytes.
std::vector<Token> lex(std::string_view source);

}  // namespace nooplab
