#include "nooplab/parser.hpp"

#include <set>
#include <unordered_map>
#include <unordered_set>

#include "nooplab/diagnostics.hpp"
#include "nooplab/lexer.hpp"

namespace nooplab {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view source) {
    auto raw = lex(source);
    std::string pendingDoc;
    for (auto& t : raw) {
      if (t.kind == TokenKind::ContractDoc) {
        if (!pendingDoc.empty()) pendingDoc += '\n';
        pendingDoc += t.text;
        continue;
      }
      if (!pendingDoc.empty()) {
        docs_[tokens_.size()] = pendingDoc;
        pendingDoc.clear();
      }
      tokens_.push_back(std::move(t));
    }
  }

  Program parseProgram() {
    Program p;
    while (at(TokenKind::KwClass)) {
      p.classes.push_back(parseClassDecl());
    }
    if (!at(TokenKind::EndOfFile)) {
      p.main = parseExpr();
      expect(TokenKind::EndOfFile, "end of input");
    }
    return p;
  }

 private:
  static constexpr int kMaxExprDepth = 2048;

  std::vector<Token> tokens_;
  std::unordered_map<size_t, std::string> docs_;
  size_t pos_ = 0;
  int exprDepth_ = 0;

  const Token& peek(size_t ahead = 0) const {
    size_t k = pos_ + ahead;
    return k < tokens_.size() ? tokens_[k] : tokens_.back();
  }
  bool at(TokenKind k) const { return peek().kind == k; }
  Token take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    std::string got = t.kind == TokenKind::EndOfFile ? "end of input" : "'" + t.text + "'";
    throw DiagnosticError({codes::SyntaxError, "expected " + what + ", found " + got, t.line, t.col});
  }

  Token expect(TokenKind k, const std::string& what) {
    if (!at(k)) fail(what);
    return take();
  }

  std::string expectIdent(const std::string& what) {
    if (!at(TokenKind::Ident)) fail(what);
    return take().text;
  }

  ClassDecl parseClassDecl() {
    ClassDecl decl;
    auto docIt = docs_.find(pos_);
    if (docIt != docs_.end()) decl.contractDoc = docIt->second;
    Token kw = expect(TokenKind::KwClass, "'class'");
    decl.line = kw.line;
    decl.col = kw.col;
    decl.name = expectIdent("class name");
    decl.superName = kObjectClass;
    if (at(TokenKind::KwExtends)) {
      take();
      decl.superName = expectIdent("superclass name");
    }
    expect(TokenKind::LBrace, "'{'");
    while (!at(TokenKind::RBrace)) {
      parseMember(decl);
    }
    take();
    return decl;
  }

  void parseMember(ClassDecl& decl) {
    Token typeTok = peek();
    ClassName type = expectIdent("member type");
    MemberLabel name = expectIdent("member name");
    if (at(TokenKind::Semicolon)) {
      take();
      decl.fields.push_back({name, type, typeTok.line, typeTok.col});
      return;
    }
    expect(TokenKind::LParen, "';' or '('");
    MethodDecl m;
    m.name = name;
    m.returnType = type;
    m.line = typeTok.line;
    m.col = typeTok.col;
    if (!at(TokenKind::RParen)) {
      for (;;) {
        ClassName ptype = expectIdent("parameter type");
        VarName pname = expectIdent("parameter name");
        m.params.push_back({pname, ptype});
        if (!at(TokenKind::Comma)) break;
        take();
      }
    }
    expect(TokenKind::RParen, "')'");
    expect(TokenKind::LBrace, "'{'");
    expect(TokenKind::KwReturn, "'return'");
    m.body = parseExpr();
    expect(TokenKind::Semicolon, "';'");
    expect(TokenKind::RBrace, "'}'");
    decl.methods.push_back(std::move(m));
  }

  ExprPtr parseExpr() {
    if (++exprDepth_ > kMaxExprDepth) {
      const Token& t = peek();
      throw DiagnosticError({codes::SyntaxError, "expression nesting too deep", t.line, t.col});
    }
    struct Depth {
      int& d;
      ~Depth() { --d; }
    } depth{exprDepth_};
    ExprPtr e = parsePrimary();
    for (;;) {
      if (at(TokenKind::Dot)) {
        take();
        Token nameTok = peek();
        MemberLabel label = expectIdent("member name");
        if (at(TokenKind::LParen)) {
          take();
          std::vector<ExprPtr> args;
          if (!at(TokenKind::RParen)) args = parseArgList();
          expect(TokenKind::RParen, "')'");
          e = makeExpr<InvokeExpr>(nameTok.line, nameTok.col, e, label, std::move(args));
        } else {
          e = makeExpr<FieldGetExpr>(nameTok.line, nameTok.col, e, label);
        }
      } else if (at(TokenKind::KwInstanceof)) {
        Token kw = take();
        ClassName cname = expectIdent("class name");
        e = makeExpr<InstanceOfExpr>(kw.line, kw.col, e, cname);
      } else {
        return e;
      }
    }
  }

  std::vector<ExprPtr> parseArgList() {
    std::vector<ExprPtr> args;
    args.push_back(parseExpr());
    while (at(TokenKind::Comma)) {
      take();
      args.push_back(parseExpr());
    }
    return args;
  }

  bool startsPrimary(const Token& t) const {
    switch (t.kind) {
      case TokenKind::Ident:
      case TokenKind::KwThis:
      case TokenKind::KwNew:
      case TokenKind::LParen:
        return true;
      default:
        return false;
    }
  }

  ExprPtr parsePrimary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::KwThis:
        take();
        return makeExpr<ThisExpr>(t.line, t.col);
      case TokenKind::Ident:
        take();
        return makeExpr<VarExpr>(t.line, t.col, t.text);
      case TokenKind::KwNew: {
        take();
        ClassName cname = expectIdent("class name");
        expect(TokenKind::LParen, "'('");
        std::vector<ExprPtr> args;
        if (!at(TokenKind::RParen)) args = parseArgList();
        expect(TokenKind::RParen, "')'");
        return makeExpr<NewExpr>(t.line, t.col, cname, std::move(args));
      }
      case TokenKind::LParen: {
        // "(C) e" is a cast when the parenthesized identifier is followed by
        // something that can start an expression; otherwise "(e)".
        if (peek(1).kind == TokenKind::Ident && peek(2).kind == TokenKind::RParen &&
            startsPrimary(peek(3))) {
          take();
          ClassName target = take().text;
          take();
          ExprPtr operand = parseExpr();
          return makeExpr<CastExpr>(t.line, t.col, target, std::move(operand));
        }
        take();
        ExprPtr inner = parseExpr();
        expect(TokenKind::RParen, "')'");
        return inner;
      }
      default:
        fail("an expression");
    }
  }
};

class Resolver {
 public:
  explicit Resolver(const Program& p) : p_(p) {
    for (const auto& c : p.classes) names_.insert(c.name);
    names_.insert(kObjectClass);
    names_.insert(kTrueClass);
    names_.insert(kFalseClass);
  }

  void run() {
    std::unordered_set<ClassName> seen;
    for (const auto& c : p_.classes) {
      if (isBuiltinClass(c.name) || !seen.insert(c.name).second) {
        throw DiagnosticError({codes::DuplicateClass,
                               "class '" + c.name + "' is already declared", c.line, c.col});
      }
    }
    for (const auto& c : p_.classes) resolveClass(c);
    if (p_.main) resolveExpr(*p_.main, nullptr, {});
  }

 private:
  const Program& p_;
  std::unordered_set<ClassName> names_;

  void requireClass(const ClassName& name, const std::string& site, int line, int col) const {
    if (!names_.count(name)) {
      throw DiagnosticError({codes::UnknownName,
                             "unknown class '" + name + "' in " + site, line, col});
    }
  }

  void resolveClass(const ClassDecl& c) {
    requireClass(c.superName, "extends clause of class " + c.name, c.line, c.col);
    std::unordered_set<MemberLabel> fieldLabels;
    for (const auto& f : c.fields) {
      if (!fieldLabels.insert(f.name).second) {
        throw DiagnosticError({codes::DuplicateMember,
                               "duplicate field '" + f.name + "' in class " + c.name, f.line, f.col});
      }
      requireClass(f.type, "field " + c.name + "." + f.name, f.line, f.col);
    }
    std::unordered_set<MemberLabel> methodLabels;
    for (const auto& m : c.methods) {
      if (!methodLabels.insert(m.name).second) {
        throw DiagnosticError({codes::DuplicateMember,
                               "duplicate method '" + m.name + "' in class " + c.name, m.line, m.col});
      }
      std::unordered_set<VarName> paramNames;
      for (const auto& prm : m.params) {
        if (!paramNames.insert(prm.name).second) {
          throw DiagnosticError({codes::DuplicateParam,
                                 "duplicate parameter '" + prm.name + "' in " + c.name + "." + m.name,
                                 m.line, m.col});
        }
        requireClass(prm.type, "parameter of " + c.name + "." + m.name, m.line, m.col);
      }
      requireClass(m.returnType, "return type of " + c.name + "." + m.name, m.line, m.col);
      resolveExpr(*m.body, &c, paramNames);
    }
  }

  void resolveExpr(const Expr& e, const ClassDecl* enclosing,
                   const std::unordered_set<VarName>& vars) {
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, VarExpr>) {
            if (!vars.count(node.name)) {
              throw DiagnosticError({codes::UnknownName,
                                     "unbound variable '" + node.name + "'", e.line, e.col});
            }
          } else if constexpr (std::is_same_v<T, ThisExpr>) {
            if (enclosing == nullptr) {
              throw DiagnosticError({codes::UnknownName,
                                     "'this' used outside a method body", e.line, e.col});
            }
          } else if constexpr (std::is_same_v<T, FieldGetExpr>) {
            resolveExpr(*node.object, enclosing, vars);
          } else if constexpr (std::is_same_v<T, InvokeExpr>) {
            resolveExpr(*node.receiver, enclosing, vars);
            for (const auto& a : node.args) resolveExpr(*a, enclosing, vars);
          } else if constexpr (std::is_same_v<T, NewExpr>) {
            requireClass(node.className, "new expression", e.line, e.col);
            for (const auto& a : node.args) resolveExpr(*a, enclosing, vars);
          } else if constexpr (std::is_same_v<T, CastExpr>) {
            requireClass(node.target, "cast", e.line, e.col);
            resolveExpr(*node.operand, enclosing, vars);
          } else if constexpr (std::is_same_v<T, InstanceOfExpr>) {
            requireClass(node.className, "instanceof test", e.line, e.col);
            resolveExpr(*node.operand, enclosing, vars);
          }
        },
        e.node);
  }
};

void printExpr(const Expr& e, std::string& out) {
  auto printReceiver = [&](const Expr& r) {
    // A cast swallows any following postfix chain, so a cast receiver
    // needs explicit parentheses to round-trip.
    bool parens = std::holds_alternative<CastExpr>(r.node);
    if (parens) out += '(';
    printExpr(r, out);
    if (parens) out += ')';
  };
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, VarExpr>) {
          out += node.name;
        } else if constexpr (std::is_same_v<T, ThisExpr>) {
          out += "this";
        } else if constexpr (std::is_same_v<T, FieldGetExpr>) {
          printReceiver(*node.object);
          out += '.';
          out += node.label;
        } else if constexpr (std::is_same_v<T, InvokeExpr>) {
          printReceiver(*node.receiver);
          out += '.';
          out += node.method;
          out += '(';
          for (size_t i = 0; i < node.args.size(); ++i) {
            if (i) out += ", ";
            printExpr(*node.args[i], out);
          }
          out += ')';
        } else if constexpr (std::is_same_v<T, NewExpr>) {
          out += "new ";
          out += node.className;
          out += '(';
          for (size_t i = 0; i < node.args.size(); ++i) {
            if (i) out += ", ";
            printExpr(*node.args[i], out);
          }
          out += ')';
        } else if constexpr (std::is_same_v<T, CastExpr>) {
          out += '(';
          out += node.target;
          out += ") ";
          printExpr(*node.operand, out);
        } else if constexpr (std::is_same_v<T, InstanceOfExpr>) {
          printReceiver(*node.operand);
          out += " instanceof ";
          out += node.className;
        }
      },
      e.node);
}

}  // namespace

Program parseProgram(std::string_view source) {
  Parser parser(source);
  Program p = parser.parseProgram();
  Resolver(p).run();
  return p;
}

std::string prettyPrint(const Expr& e) {
  std::string out;
  printExpr(e, out);
  return out;
}

std::string prettyPrint(const Program& p) {
  std::string out;
  for (const auto& c : p.classes) {
    if (!c.contractDoc.empty()) {
      size_t start = 0;
      while (start <= c.contractDoc.size()) {
        size_t end = c.contractDoc.find('\n', start);
        if (end == std::string::npos) end = c.contractDoc.size();
        out += "//@ " + c.contractDoc.substr(start, end - start) + "\n";
        start = end + 1;
      }
    }
    out += "class " + c.name;
    if (c.superName != kObjectClass) out += " extends " + c.superName;
    out += " {\n";
    for (const auto& f : c.fields) {
      out += "  " + f.type + " " + f.name + ";\n";
    }
    for (const auto& m : c.methods) {
      out += "  " + m.returnType + " " + m.name + "(";
      for (size_t i = 0; i < m.params.size(); ++i) {
        if (i) out += ", ";
        out += m.params[i].type + " " + m.params[i].name;
      }
      out += ") { return " + prettyPrint(*m.body) + "; }\n";
    }
    out += "}\n";
  }
  if (p.main) {
    out += prettyPrint(*p.main);
    out += "\n";
  }
  return out;
}

}  // namespace nooplab
