#include "condtab/formula.hpp"

#include <cctype>

namespace condtab {

namespace {

enum class Tok { kIdent, kNot, kAnd, kOr, kImplies, kIff, kCond, kLParen, kRParen, kEnd };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
};

std::string_view describe(Tok t) {
  switch (t) {
    case Tok::kIdent: return "identifier";
    case Tok::kNot: return "'~'";
    case Tok::kAnd: return "'&'";
    case Tok::kOr: return "'|'";
    case Tok::kImplies: return "'->'";
    case Tok::kIff: return "'<->'";
    case Tok::kCond: return "'>'";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kEnd: return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::kIdent, i, std::string(s.substr(i, j - i))});
      i = j;
      continue;
    }
    if (s.substr(i, 3) == "<->") {
      out.push_back({Tok::kIff, i, {}});
      i += 3;
      continue;
    }
    if (s.substr(i, 2) == "->") {
      out.push_back({Tok::kImplies, i, {}});
      i += 2;
      continue;
    }
    Tok t;
    switch (c) {
      case '~': t = Tok::kNot; break;
      case '&': t = Tok::kAnd; break;
      case '|': t = Tok::kOr; break;
      case '>': t = Tok::kCond; break;
      case '(': t = Tok::kLParen; break;
      case ')': t = Tok::kRParen; break;
      default:
        throw ParseError("unexpected character '" + std::string(1, c) + "' at " +
                             std::to_string(i),
                         i);
    }
    out.push_back({t, i, {}});
    ++i;
  }
  out.push_back({Tok::kEnd, s.size(), {}});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula parse_all() {
    Formula f = parse_iff();
    expect(Tok::kEnd);
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool accept(Tok t) {
    if (peek().kind != t) return false;
    ++pos_;
    return true;
  }
  void expect(Tok t) {
    if (!accept(t)) fail(std::string("expected ") + std::string(describe(t)));
  }
  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    throw ParseError(what + ", found " + std::string(describe(t.kind)) + " at " +
                         std::to_string(t.pos),
                     t.pos);
  }

  Formula parse_iff() {
    Formula l = parse_implies();
    if (accept(Tok::kIff)) return Formula::Iff(l, parse_iff());
    return l;
  }
  Formula parse_implies() {
    Formula l = parse_cond();
    if (accept(Tok::kImplies)) return Formula::Implies(l, parse_implies());
    return l;
  }
  Formula parse_cond() {
    Formula l = parse_or();
    if (accept(Tok::kCond)) return Formula::Cond(l, parse_cond());
    return l;
  }
  Formula parse_or() {
    Formula l = parse_and();
    while (accept(Tok::kOr)) l = Formula::Or(l, parse_and());
    return l;
  }
  Formula parse_and() {
    Formula l = parse_unary();
    while (accept(Tok::kAnd)) l = Formula::And(l, parse_unary());
    return l;
  }
  Formula parse_unary() {
    if (accept(Tok::kNot)) return Formula::Not(parse_unary());
    if (accept(Tok::kLParen)) {
      Formula f = parse_iff();
      expect(Tok::kRParen);
      return f;
    }
    if (peek().kind == Tok::kIdent) {
      std::string name = peek().text;
      ++pos_;
      return Formula::Atom(std::move(name));
    }
    fail("expected a formula");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text) { return Parser(tokenize(text)).parse_all(); }

}  // namespace condtab
