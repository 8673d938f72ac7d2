#include "ludics/parser.hpp"

#include <cctype>

namespace ludics {

namespace {

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1;
  int col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, line, col); }

  void advance() {
    if (pos < src.size() && src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_ws() {
    for (;;) {
      while (pos < src.size() && std::isspace((unsigned char)src[pos])) advance();
      if (pos + 1 < src.size() && src[pos] == '-' && src[pos + 1] == '-') {
        while (pos < src.size() && src[pos] != '\n') advance();
        continue;
      }
      break;
    }
  }

  bool eof() {
    skip_ws();
    return pos >= src.size();
  }

  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }

  bool try_consume(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) {
      advance();
      return true;
    }
    return false;
  }

  bool try_consume(const std::string& s) {
    skip_ws();
    if (src.compare(pos, s.size(), s) == 0) {
      for (size_t i = 0; i < s.size(); ++i) advance();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!try_consume(c)) fail(std::string("expected '") + c + "'");
  }

  static bool ident_char(char c) {
    return std::isalnum((unsigned char)c) || c == '_' || c == '\'';
  }

  std::string ident() {
    skip_ws();
    if (pos >= src.size() || !(std::isalpha((unsigned char)src[pos])))
      fail("expected identifier");
    std::string s;
    while (pos < src.size() && ident_char(src[pos])) {
      s += src[pos];
      advance();
    }
    return s;
  }

  int integer() {
    skip_ws();
    if (pos >= src.size() || !std::isdigit((unsigned char)src[pos]))
      fail("expected integer");
    int v = 0;
    while (pos < src.size() && std::isdigit((unsigned char)src[pos])) {
      v = v * 10 + (src[pos] - '0');
      advance();
    }
    return v;
  }
};

struct DesignParser {
  Lexer& lx;
  const Signature& sig;

  DesignPtr parse_any() {
    char c = lx.peek();
    if (c == '#' || c == '_' || c == '[') return parse_pos();
    if (c == '{') return parse_neg();
    // Identifier: VAR "|" starts a positive, NAME "(" starts a branch.
    size_t save_pos = lx.pos;
    int save_line = lx.line, save_col = lx.col;
    lx.ident();
    char next = lx.peek();
    lx.pos = save_pos;
    lx.line = save_line;
    lx.col = save_col;
    if (next == '|') return parse_pos();
    return parse_neg();
  }

  DesignPtr parse_pos() {
    if (lx.try_consume('#')) return daimon();
    if (lx.try_consume('_')) return omega();
    if (lx.try_consume('[')) {
      DesignPtr head = parse_neg();
      lx.expect(']');
      lx.expect('|');
      auto [name, args] = parse_call();
      return cut_app(head, name, std::move(args));
    }
    Var head = lx.ident();
    lx.expect('|');
    auto [name, args] = parse_call();
    return pos_app(head, name, std::move(args));
  }

  std::pair<Name, std::vector<DesignPtr>> parse_call() {
    Name name = lx.ident();
    lx.expect('<');
    std::vector<DesignPtr> args;
    if (!lx.try_consume('>')) {
      args.push_back(parse_neg());
      while (lx.try_consume(',')) args.push_back(parse_neg());
      lx.expect('>');
    }
    return {name, std::move(args)};
  }

  DesignPtr parse_neg() {
    if (lx.try_consume("{}")) return omega_neg();
    std::map<Name, Branch> branches;
    for (;;) {
      Name name = lx.ident();
      lx.expect('(');
      std::vector<Var> binders;
      if (!lx.try_consume(')')) {
        binders.push_back(lx.ident());
        while (lx.try_consume(',')) binders.push_back(lx.ident());
        lx.expect(')');
      }
      lx.expect('.');
      DesignPtr body;
      if (lx.try_consume('(')) {
        body = parse_pos();
        lx.expect(')');
      } else {
        body = parse_pos();
      }
      if (branches.count(name)) lx.fail("duplicate branch for name " + name);
      branches.emplace(name, Branch{std::move(binders), std::move(body)});
      if (!lx.try_consume('+')) break;
    }
    return neg_sum(std::move(branches));
  }
};

}  // namespace

ParsedFile parse_design_file(const std::string& text, bool strict_linear) {
  Lexer lx(text);
  ParsedFile out;
  if (lx.try_consume("sig")) {
    for (;;) {
      Name name = lx.ident();
      lx.expect('/');
      int arity = lx.integer();
      out.signature.declare(name, arity);
      if (lx.try_consume(';')) break;
    }
  }
  DesignParser p{lx, out.signature};
  out.design = p.parse_any();
  if (!lx.eof()) lx.fail("trailing input after design");
  check_design(out.design, out.signature, strict_linear);
  return out;
}

DesignPtr parse_design(const std::string& text, const Signature& sig, bool strict_linear) {
  Lexer lx(text);
  DesignParser p{lx, sig};
  DesignPtr d = p.parse_any();
  if (!lx.eof()) lx.fail("trailing input after design");
  check_design(d, sig, strict_linear);
  return d;
}

}  // namespace ludics
