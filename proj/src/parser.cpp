#include "picheck/parser.hpp"

#include <cctype>
#include <set>

#include "picheck/kernel.hpp"

namespace picheck {

namespace {

enum class Tok {
  Ident,
  LParen,
  RParen,
  Colon,
  ColonEq,
  FatArrow,  // =>
  Arrow,     // ->
  Comma,
  Dot,
  Pipe,
  LBrace,
  RBrace,
  Semi,
  Equal,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SrcLoc loc;
};

const std::set<std::string> kKeywords = {
    "fun",       "forall", "Prop",     "Type",   "Parameter",
    "Axiom",     "Definition", "Theorem", "Inductive", "Record",
    "Require",   "Check",  "Eval"};

struct Lexer {
  const std::string& text;
  std::string file;
  std::size_t pos = 0;
  int line = 1, col = 1;

  SrcLoc here() const { return {file, line, col}; }

  [[noreturn]] void fail(const std::string& msg, SrcLoc loc) {
    throw CheckError(ErrKind::ParseError, msg, std::move(loc));
  }

  void advance() {
    if (text[pos] == '\n') {
      line++;
      col = 1;
    } else {
      col++;
    }
    pos++;
  }

  void skip_trivia() {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
        continue;
      }
      if (c == '(' && pos + 1 < text.size() && text[pos + 1] == '*') {
        SrcLoc start = here();
        advance();
        advance();
        int depth = 1;
        while (depth > 0) {
          if (pos >= text.size()) fail("unterminated comment", start);
          if (text[pos] == '(' && pos + 1 < text.size() &&
              text[pos + 1] == '*') {
            depth++;
            advance();
            advance();
          } else if (text[pos] == '*' && pos + 1 < text.size() &&
                     text[pos + 1] == ')') {
            depth--;
            advance();
            advance();
          } else {
            advance();
          }
        }
        continue;
      }
      break;
    }
  }

  Token next() {
    skip_trivia();
    SrcLoc loc = here();
    if (pos >= text.size()) return {Tok::End, "", loc};
    char c = text[pos];
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string id;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) ||
              text[pos] == '_')) {
        id += text[pos];
        advance();
      }
      return {Tok::Ident, id, loc};
    }
    switch (c) {
      case '(': advance(); return {Tok::LParen, "(", loc};
      case ')': advance(); return {Tok::RParen, ")", loc};
      case '{': advance(); return {Tok::LBrace, "{", loc};
      case '}': advance(); return {Tok::RBrace, "}", loc};
      case ',': advance(); return {Tok::Comma, ",", loc};
      case '.': advance(); return {Tok::Dot, ".", loc};
      case '|': advance(); return {Tok::Pipe, "|", loc};
      case ';': advance(); return {Tok::Semi, ";", loc};
      case ':':
        advance();
        if (pos < text.size() && text[pos] == '=') {
          advance();
          return {Tok::ColonEq, ":=", loc};
        }
        return {Tok::Colon, ":", loc};
      case '=':
        advance();
        if (pos < text.size() && text[pos] == '>') {
          advance();
          return {Tok::FatArrow, "=>", loc};
        }
        return {Tok::Equal, "=", loc};
      case '-':
        advance();
        if (pos < text.size() && text[pos] == '>') {
          advance();
          return {Tok::Arrow, "->", loc};
        }
        fail("unexpected character '-'", loc);
      default:
        fail(std::string("unexpected character '") + c + "'", loc);
    }
  }
};

struct Parser {
  std::vector<Token> toks;
  std::size_t at = 0;

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = at + ahead;
    return i < toks.size() ? toks[i] : toks.back();
  }
  const Token& get() {
    const Token& t = peek();
    if (at < toks.size() - 1) at++;
    return t;
  }

  [[noreturn]] void fail(const std::string& expected) {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw CheckError(ErrKind::ParseError,
                     "expected " + expected + ", found " + found, t.loc);
  }

  Token expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) fail(what);
    return get();
  }

  bool at_keyword(const std::string& kw) const {
    return peek().kind == Tok::Ident && peek().text == kw;
  }

  std::string expect_name() {
    if (peek().kind != Tok::Ident) fail("an identifier");
    if (kKeywords.count(peek().text)) fail("an identifier");
    return get().text;
  }

  // --- terms ---------------------------------------------------------------

  ast::ExprPtr parse_term() {
    if (at_keyword("fun")) {
      SrcLoc loc = get().loc;
      std::vector<ast::Binder> binders = parse_binders();
      expect(Tok::FatArrow, "'=>'");
      ast::ExprPtr body = parse_term();
      for (std::size_t i = binders.size(); i-- > 0;)
        body = ast::mk({ast::FunE{binders[i].name, binders[i].type, body},
                        i == 0 ? loc : binders[i].loc});
      return body;
    }
    if (at_keyword("forall")) {
      SrcLoc loc = get().loc;
      std::vector<ast::Binder> binders = parse_binders();
      expect(Tok::Comma, "','");
      ast::ExprPtr body = parse_term();
      for (std::size_t i = binders.size(); i-- > 0;)
        body = ast::mk({ast::ForallE{binders[i].name, binders[i].type, body},
                        i == 0 ? loc : binders[i].loc});
      return body;
    }
    ast::ExprPtr lhs = parse_eq_operand();
    if (peek().kind == Tok::Equal) {
      SrcLoc loc = get().loc;
      ast::ExprPtr rhs = parse_app();
      lhs = ast::mk({ast::EqE{lhs, rhs}, loc});
    }
    if (peek().kind == Tok::Arrow) {
      SrcLoc loc = get().loc;
      ast::ExprPtr rhs = parse_term();
      return ast::mk({ast::ArrowE{lhs, rhs}, loc});
    }
    return lhs;
  }

  ast::ExprPtr parse_eq_operand() { return parse_app(); }

  ast::ExprPtr parse_app() {
    ast::ExprPtr fn = parse_atom();
    while (starts_atom()) {
      ast::ExprPtr arg = parse_atom();
      SrcLoc loc = fn->loc;
      fn = ast::mk({ast::AppE{fn, arg}, loc});
    }
    return fn;
  }

  bool starts_atom() const {
    const Token& t = peek();
    if (t.kind == Tok::LParen) return true;
    if (t.kind != Tok::Ident) return false;
    // Term-level keywords may start an atom only via Prop/Type.
    if (t.text == "Prop" || t.text == "Type") return true;
    return !kKeywords.count(t.text);
  }

  ast::ExprPtr parse_atom() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      get();
      ast::ExprPtr inner = parse_term();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "Prop") return ast::mk({ast::PropE{}, get().loc});
      if (t.text == "Type") return ast::mk({ast::TypeE{}, get().loc});
      if (!kKeywords.count(t.text)) {
        Token id = get();
        return ast::mk({ast::Ident{id.text}, id.loc});
      }
    }
    fail("a term");
  }

  // (x y : T) (z : U) ...
  std::vector<ast::Binder> parse_binders() {
    std::vector<ast::Binder> out;
    if (peek().kind != Tok::LParen) fail("'(' starting a binder");
    while (peek().kind == Tok::LParen) {
      get();
      std::vector<Token> names;
      if (peek().kind != Tok::Ident || kKeywords.count(peek().text))
        fail("a binder name");
      while (peek().kind == Tok::Ident && !kKeywords.count(peek().text))
        names.push_back(get());
      expect(Tok::Colon, "':'");
      ast::ExprPtr type = parse_term();
      expect(Tok::RParen, "')'");
      for (const Token& n : names) out.push_back({n.text, type, n.loc});
    }
    return out;
  }

  // --- commands ------------------------------------------------------------

  std::vector<ast::Command> parse_file() {
    std::vector<ast::Command> out;
    while (peek().kind != Tok::End) out.push_back(parse_command());
    return out;
  }

  ast::Command parse_command() {
    const Token& t = peek();
    if (t.kind != Tok::Ident) fail("a command");
    SrcLoc loc = t.loc;
    const std::string& kw = t.text;
    if (kw == "Parameter" || kw == "Axiom") {
      get();
      std::string name = expect_name();
      expect(Tok::Colon, "':'");
      ast::ExprPtr type = parse_term();
      expect(Tok::Dot, "'.'");
      return {ast::ParameterCmd{name, type}, loc, kw};
    }
    if (kw == "Definition" || kw == "Theorem") {
      get();
      bool theorem = kw == "Theorem";
      std::string name = expect_name();
      std::optional<ast::ExprPtr> type;
      if (peek().kind == Tok::Colon) {
        get();
        type = parse_term();
      } else if (theorem) {
        fail("':' (a theorem states its type)");
      }
      expect(Tok::ColonEq, "':='");
      ast::ExprPtr body = parse_term();
      expect(Tok::Dot, "'.'");
      return {ast::DefinitionCmd{name, type, body, theorem}, loc, kw};
    }
    if (kw == "Inductive") {
      get();
      std::string name = expect_name();
      std::vector<ast::Binder> params;
      if (peek().kind == Tok::LParen) params = parse_binders();
      expect(Tok::Colon, "':'");
      ast::ExprPtr arity = parse_term();
      expect(Tok::ColonEq, "':='");
      std::vector<ast::CtorDecl> ctors;
      if (peek().kind == Tok::Pipe) get();  // optional leading bar
      while (peek().kind != Tok::Dot) {
        SrcLoc cloc = peek().loc;
        std::string cname = expect_name();
        expect(Tok::Colon, "':'");
        ast::ExprPtr ctype = parse_term();
        ctors.push_back({cname, ctype, cloc});
        if (peek().kind == Tok::Pipe) {
          get();
          continue;
        }
        break;
      }
      expect(Tok::Dot, "'.'");
      return {ast::InductiveCmd{name, params, arity, ctors}, loc, kw};
    }
    if (kw == "Record") {
      get();
      std::string name = expect_name();
      std::vector<ast::Binder> params;
      if (peek().kind == Tok::LParen) params = parse_binders();
      expect(Tok::Colon, "':'");
      ast::ExprPtr arity = parse_term();
      expect(Tok::ColonEq, "':='");
      expect(Tok::LBrace, "'{'");
      std::vector<ast::FieldDecl> fields;
      while (peek().kind != Tok::RBrace) {
        SrcLoc floc = peek().loc;
        std::string fname = expect_name();
        expect(Tok::Colon, "':'");
        ast::ExprPtr ftype = parse_term();
        fields.push_back({fname, ftype, floc});
        if (peek().kind == Tok::Semi) {
          get();
          continue;
        }
        break;
      }
      expect(Tok::RBrace, "'}'");
      expect(Tok::Dot, "'.'");
      return {ast::RecordCmd{name, params, arity, fields}, loc, kw};
    }
    if (kw == "Require") {
      get();
      std::string mod = expect_name();
      expect(Tok::Dot, "'.'");
      return {ast::RequireCmd{mod}, loc, kw};
    }
    if (kw == "Check" || kw == "Eval") {
      get();
      ast::ExprPtr e = parse_term();
      expect(Tok::Dot, "'.'");
      if (kw == "Check") return {ast::CheckCmd{e}, loc, kw};
      return {ast::EvalCmd{e}, loc, kw};
    }
    fail("a command keyword");
  }
};

}  // namespace

std::vector<ast::Command> parse(const std::string& text,
                                const std::string& filename) {
  Lexer lexer{text, filename};
  std::vector<Token> toks;
  while (true) {
    Token t = lexer.next();
    bool end = t.kind == Tok::End;
    toks.push_back(std::move(t));
    if (end) break;
  }
  Parser parser{std::move(toks)};
  return parser.parse_file();
}

}  // namespace picheck
