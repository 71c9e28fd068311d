#include "hylo/parser.hpp"

#include <cctype>

namespace hylo {

namespace {

struct Token {
  enum class Type { Ident, PatVar, LParen, RParen, Comma, Tilde, At, Amp, Arrow, End };
  Type type;
  std::string text;
  size_t pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_])))
      ++i_;
    size_t start = i_;
    if (i_ >= text_.size()) {
      tok_ = {Token::Type::End, "", start};
      return;
    }
    char c = text_[i_];
    auto one = [&](Token::Type t) {
      ++i_;
      tok_ = {t, std::string(1, c), start};
    };
    switch (c) {
      case '(': return one(Token::Type::LParen);
      case ')': return one(Token::Type::RParen);
      case ',': return one(Token::Type::Comma);
      case '~': return one(Token::Type::Tilde);
      case '@': return one(Token::Type::At);
      case '&': return one(Token::Type::Amp);
      case '-':
        if (i_ + 1 < text_.size() && text_[i_ + 1] == '>') {
          i_ += 2;
          tok_ = {Token::Type::Arrow, "->", start};
          return;
        }
        throw ParseError("stray '-'", start);
      case '?': {
        ++i_;
        std::string name = lex_ident_tail(start);
        tok_ = {Token::Type::PatVar, name, start};
        return;
      }
      default:
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
          tok_ = {Token::Type::Ident, lex_ident_tail(start), start};
          return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
  }

  std::string lex_ident_tail(size_t start) {
    size_t b = i_;
    while (i_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[i_])) ||
            text_[i_] == '_' || text_[i_] == '\''))
      ++i_;
    if (i_ == b) throw ParseError("expected identifier", start);
    return text_.substr(b, i_ - b);
  }

  const std::string& text_;
  size_t i_ = 0;
  Token tok_{Token::Type::End, "", 0};
};

class Parser {
 public:
  Parser(const std::string& text, const Signature& sig, bool patterns)
      : lex_(text), sig_(sig), patterns_(patterns) {}

  FormulaPtr run() {
    FormulaPtr f = impl();
    if (lex_.peek().type != Token::Type::End)
      throw ParseError("trailing input after formula", lex_.peek().pos);
    return f;
  }

 private:
  FormulaPtr impl() {
    FormulaPtr lhs = conj();
    if (lex_.peek().type == Token::Type::Arrow) {
      lex_.take();
      return mk_impl(lhs, impl());  // right-associative
    }
    return lhs;
  }

  FormulaPtr conj() {
    FormulaPtr lhs = unary();
    while (lex_.peek().type == Token::Type::Amp) {
      lex_.take();
      lhs = mk_conj(lhs, unary());
    }
    return lhs;
  }

  FormulaPtr unary() {
    const Token& t = lex_.peek();
    switch (t.type) {
      case Token::Type::Tilde:
        lex_.take();
        return mk_neg(unary());
      case Token::Type::At: {
        lex_.take();
        Token n = expect_ident("nominal after '@'");
        if (!sig_.is_nominal(n.text))
          throw ParseError("satisfaction operator requires a nominal, got '" +
                               n.text + "'",
                           n.pos);
        return mk_sat(n.text, unary());
      }
      case Token::Type::PatVar:
        return pattern_var();
      case Token::Type::LParen: {
        lex_.take();
        FormulaPtr f = impl();
        expect(Token::Type::RParen, "')'");
        return f;
      }
      case Token::Type::Ident:
        return ident_form();
      default:
        throw ParseError("expected formula", t.pos);
    }
  }

  FormulaPtr ident_form() {
    Token t = lex_.take();
    const std::string& id = t.text;
    if (id == "bot") return mk_bottom();
    if (id == "dia") {
      Token m = expect_ident("modality after 'dia'");
      require_modality(m);
      return mk_dia(m.text, unary());
    }
    if (id == "box") {
      // "box m f" names a modality explicitly; "box f" uses the modality
      // named box, when declared.
      if (lex_.peek().type == Token::Type::Ident &&
          sig_.is_modality(lex_.peek().text)) {
        Token m = lex_.take();
        return mk_box(m.text, unary());
      }
      if (sig_.is_modality("box")) return mk_box("box", unary());
      throw ParseError("'box' needs a declared modality", t.pos);
    }
    switch (sig_.kind_of(id)) {
      case SymbolKind::Prop:
        return mk_prop(id);
      case SymbolKind::Nominal:
        return mk_nominal(id);
      case SymbolKind::Modality:
        return mk_box(id, unary());
      case SymbolKind::Predicate:
        return pred_atom(t);
      case SymbolKind::TimeConst:
        throw ParseError("time constant '" + id + "' used as a formula", t.pos);
      case SymbolKind::Unknown:
        throw ParseError("undeclared identifier '" + id + "'", t.pos);
    }
    throw ParseError("unreachable", t.pos);
  }

  FormulaPtr pred_atom(const Token& sym) {
    expect(Token::Type::LParen, "'(' after predicate symbol");
    std::vector<std::string> terms;
    if (lex_.peek().type != Token::Type::RParen) {
      terms.push_back(term());
      while (lex_.peek().type == Token::Type::Comma) {
        lex_.take();
        terms.push_back(term());
      }
    }
    expect(Token::Type::RParen, "')'");
    int want = sig_.arity(sym.text);
    if (static_cast<int>(terms.size()) != want)
      throw ParseError("arity mismatch for '" + sym.text + "': expected " +
                           std::to_string(want) + ", got " +
                           std::to_string(terms.size()),
                       sym.pos);
    return mk_pred(sym.text, std::move(terms));
  }

  std::string term() {
    const Token& t = lex_.peek();
    if (patterns_ && t.type == Token::Type::PatVar) return "?" + lex_.take().text;
    Token tt = expect_ident("term");
    if (!sig_.is_time_const(tt.text))
      throw ParseError("term '" + tt.text + "' is not a declared time constant",
                       tt.pos);
    return tt.text;
  }

  FormulaPtr pattern_var() {
    Token v = lex_.take();
    if (!patterns_)
      throw ParseError("pattern variable '?" + v.text + "' outside a pattern",
                       v.pos);
    if (lex_.peek().type == Token::Type::LParen) {
      lex_.take();
      std::string t = term();
      expect(Token::Type::RParen, "')'");
      return mk_avar(v.text, t);
    }
    return mk_fvar(v.text);
  }

  void require_modality(const Token& m) {
    if (!sig_.is_modality(m.text))
      throw ParseError("'" + m.text + "' is not a declared modality", m.pos);
  }

  Token expect_ident(const char* what) {
    if (lex_.peek().type != Token::Type::Ident)
      throw ParseError(std::string("expected ") + what, lex_.peek().pos);
    return lex_.take();
  }

  void expect(Token::Type type, const char* what) {
    if (lex_.peek().type != type)
      throw ParseError(std::string("expected ") + what, lex_.peek().pos);
    lex_.take();
  }

  Lexer lex_;
  const Signature& sig_;
  bool patterns_;
};

}  // namespace

FormulaPtr parse_formula(const std::string& text, const Signature& sig) {
  return Parser(text, sig, false).run();
}

FormulaPtr parse_pattern(const std::string& text, const Signature& sig) {
  return Parser(text, sig, true).run();
}

}  // namespace hylo
