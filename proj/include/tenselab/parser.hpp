// Text format for formulas.
//
//   formula  := quant | iff
//   quant    := ('forall' | 'exists') VAR '.'? formula          (extends maximally right)
//   iff      := imp ('iff' (quant | imp))?                      (non-associative)
//   imp      := or ('->' (quant | imp))?                        (right-associative)
//   or       := and ('or' (quant | or))?
//   and      := unary ('and' (quant | and))?
//   unary    := ('box'|'bbox'|'dia'|'bdia'|'not') unary | atom
//   atom     := IDENT | 'bot' | 'top' | '(' formula ')'
//
// IDENT is [A-Z][A-Za-z0-9_]*; identifiers starting with X, Y or Z are
// second-order variables, the rest are propositional symbols. Quantifiers may
// only bind variable-named identifiers. Lowercase identifiers are keywords
// (or world symbols, in the sequent syntax that reuses this lexer).
//
// All sugar is eliminated at parse time into the minimal grammar, except that
// in native mode (IKt2(dia,bdia) proof files) 'dia'/'bdia' become native nodes.

#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "formula.hpp"

namespace tenselab {

struct ParseError : std::runtime_error {
  size_t pos;
  ParseError(const std::string& msg, size_t at)
      : std::runtime_error(msg + " (at offset " + std::to_string(at) + ")"), pos(at) {}
};

struct Token {
  enum Kind { Ident, Lower, Arrow, DArrow, LPar, RPar, Dot, Comma, Pipe, Colon, End } kind;
  std::string text;
  size_t pos;
};

inline std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0, n = s.size();
  while (i < n) {
    char c = s[i];
    if (std::isspace((unsigned char)c)) { i++; continue; }
    size_t at = i;
    if (c == '-' && i + 1 < n && s[i + 1] == '>') { out.push_back({Token::Arrow, "->", at}); i += 2; continue; }
    if (c == '=' && i + 1 < n && s[i + 1] == '>') { out.push_back({Token::DArrow, "=>", at}); i += 2; continue; }
    if (c == '(') { out.push_back({Token::LPar, "(", at}); i++; continue; }
    if (c == ')') { out.push_back({Token::RPar, ")", at}); i++; continue; }
    if (c == '.') { out.push_back({Token::Dot, ".", at}); i++; continue; }
    if (c == ',') { out.push_back({Token::Comma, ",", at}); i++; continue; }
    if (c == '|') { out.push_back({Token::Pipe, "|", at}); i++; continue; }
    if (c == ':') { out.push_back({Token::Colon, ":", at}); i++; continue; }
    if (std::isalpha((unsigned char)c)) {
      size_t j = i;
      while (j < n && (std::isalnum((unsigned char)s[j]) || s[j] == '_')) j++;
      std::string w = s.substr(i, j - i);
      out.push_back({std::isupper((unsigned char)c) ? Token::Ident : Token::Lower, w, at});
      i = j;
      continue;
    }
    throw ParseError(std::string("unknown character '") + c + "'", at);
  }
  out.push_back({Token::End, "", n});
  return out;
}

inline bool is_var_name(const std::string& w) {
  return !w.empty() && (w[0] == 'X' || w[0] == 'Y' || w[0] == 'Z');
}

class FormulaParser {
 public:
  FormulaParser(const std::vector<Token>& toks, size_t start = 0, bool native = false)
      : t_(toks), i_(start), native_(native) {}

  Fm parse_formula() {
    if (at_kw("forall") || at_kw("exists")) return quant();
    return iff();
  }

  size_t position() const { return i_; }

  // Entry point for whole-string parses.
  static Fm parse(const std::string& s, bool native = false) {
    auto toks = lex(s);
    FormulaParser p(toks, 0, native);
    Fm f = p.parse_formula();
    if (toks[p.i_].kind != Token::End)
      throw ParseError("trailing input after formula", toks[p.i_].pos);
    if (f->dangling != 0) throw std::logic_error("parser produced dangling index");
    return f;
  }

 private:
  const std::vector<Token>& t_;
  size_t i_;
  bool native_;
  std::vector<std::string> env_;  // innermost binder last

  const Token& cur() const { return t_[i_]; }
  bool at_kw(const char* w) const { return cur().kind == Token::Lower && cur().text == w; }
  [[noreturn]] void fail(const std::string& m) const { throw ParseError(m, cur().pos); }

  Fm quant() {
    bool ex = cur().text == "exists";
    i_++;
    if (cur().kind != Token::Ident || !is_var_name(cur().text))
      fail("quantifier needs a variable (identifier starting with X, Y or Z)");
    std::string x = cur().text;
    i_++;
    if (cur().kind == Token::Dot) i_++;
    env_.push_back(x);
    Fm body = parse_formula();
    env_.pop_back();
    return ex ? exists_from_body(body) : all(body);
  }

  Fm rhs_or(Fm (FormulaParser::*level)()) {
    if (at_kw("forall") || at_kw("exists")) return quant();
    return (this->*level)();
  }

  Fm iff() {
    Fm a = impl();
    if (at_kw("iff")) {
      i_++;
      Fm b = rhs_or(&FormulaParser::impl);
      return f_iff(a, b);
    }
    return a;
  }

  Fm impl() {
    Fm a = disj();
    if (cur().kind == Token::Arrow) {
      i_++;
      return imp(a, rhs_or(&FormulaParser::impl));
    }
    return a;
  }

  Fm disj() {
    Fm a = conj();
    if (at_kw("or")) {
      i_++;
      return f_or(a, rhs_or(&FormulaParser::disj));
    }
    return a;
  }

  Fm conj() {
    Fm a = unary();
    if (at_kw("and")) {
      i_++;
      return f_and(a, rhs_or(&FormulaParser::conj));
    }
    return a;
  }

  Fm unary() {
    if (cur().kind == Token::Lower) {
      const std::string& w = cur().text;
      if (w == "box") { i_++; return box(unary()); }
      if (w == "bbox") { i_++; return bbox(unary()); }
      if (w == "dia") { i_++; Fm a = unary(); return native_ ? dia(a) : f_dia(a); }
      if (w == "bdia") { i_++; Fm a = unary(); return native_ ? bdia(a) : f_bdia(a); }
      if (w == "not") { i_++; return f_not(unary()); }
    }
    return atom();
  }

  Fm atom() {
    if (cur().kind == Token::LPar) {
      i_++;
      Fm f = parse_formula();
      if (cur().kind != Token::RPar) fail("expected ')'");
      i_++;
      return f;
    }
    if (at_kw("bot")) { i_++; return f_bot(); }
    if (at_kw("top")) { i_++; return f_top(); }
    if (cur().kind == Token::Ident) {
      std::string w = cur().text;
      i_++;
      if (is_var_name(w)) {
        for (size_t k = env_.size(); k-- > 0;)
          if (env_[k] == w) return bnd((int)(env_.size() - 1 - k));
        return var(w);
      }
      return prop(w);
    }
    fail("expected a formula");
  }
};

inline Fm parse(const std::string& s) { return FormulaParser::parse(s, false); }
inline Fm parse_native(const std::string& s) { return FormulaParser::parse(s, true); }

}  // namespace tenselab
