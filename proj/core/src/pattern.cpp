#include "ludics/pattern.hpp"

#include <cctype>

namespace ludics {

namespace {
template <typename T>
PatternPtr makep(T node) {
  return std::make_shared<DataPattern>(DataPattern{std::move(node)});
}
}  // namespace

PatternPtr pvar(Var name) { return makep(PVar{std::move(name)}); }

PatternPtr pname(const Name& name) {
  if (Signature::reserved(name))
    throw ludics_error("data pattern over reserved name " + name);
  return makep(PName{name});
}

PatternPtr pplus(PatternPtr l, PatternPtr r) { return makep(PPlus{std::move(l), std::move(r)}); }
PatternPtr ptensor(PatternPtr l, PatternPtr r) { return makep(PTensor{std::move(l), std::move(r)}); }
PatternPtr pmu(Var var, PatternPtr body) { return makep(PMu{std::move(var), std::move(body)}); }

std::set<Var> pattern_free_vars(const PatternPtr& p) {
  return std::visit(
      [](const auto& n) -> std::set<Var> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PVar>) return {n.name};
        else if constexpr (std::is_same_v<T, PName>) return {};
        else if constexpr (std::is_same_v<T, PMu>) {
          auto s = pattern_free_vars(n.body);
          s.erase(n.var);
          return s;
        } else {
          auto s = pattern_free_vars(n.left);
          auto r = pattern_free_vars(n.right);
          s.insert(r.begin(), r.end());
          return s;
        }
      },
      p->node);
}

std::string render_pattern(const PatternPtr& p) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PVar>) return n.name;
        else if constexpr (std::is_same_v<T, PName>) return n.name;
        else if constexpr (std::is_same_v<T, PPlus>)
          return "(" + render_pattern(n.left) + " (+) " + render_pattern(n.right) + ")";
        else if constexpr (std::is_same_v<T, PTensor>)
          return "(" + render_pattern(n.left) + " (*) " + render_pattern(n.right) + ")";
        else
          return "(mu " + n.var + ". " + render_pattern(n.body) + ")";
      },
      p->node);
}

namespace {

struct PatLexer {
  const std::string& src;
  size_t pos = 0;

  void skip() {
    for (;;) {
      while (pos < src.size() && std::isspace((unsigned char)src[pos])) ++pos;
      if (pos + 1 < src.size() && src[pos] == '-' && src[pos + 1] == '-') {
        while (pos < src.size() && src[pos] != '\n') ++pos;
        continue;
      }
      break;
    }
  }

  bool try_tok(const std::string& t) {
    skip();
    if (src.compare(pos, t.size(), t) == 0) {
      pos += t.size();
      return true;
    }
    return false;
  }

  char peek() {
    skip();
    return pos < src.size() ? src[pos] : '\0';
  }

  std::string ident() {
    skip();
    if (pos >= src.size() || !std::isalpha((unsigned char)src[pos]))
      throw ludics_error("pattern: expected identifier near position " + std::to_string(pos));
    std::string s;
    while (pos < src.size() && (std::isalnum((unsigned char)src[pos]) || src[pos] == '_' ||
                                src[pos] == '\'')) {
      s += src[pos++];
    }
    return s;
  }

  bool eof() {
    skip();
    return pos >= src.size();
  }
};

struct PatParser {
  PatLexer lx;

  PatternPtr atom() {
    if (lx.try_tok("(")) {
      PatternPtr p = expr();
      if (!lx.try_tok(")")) throw ludics_error("pattern: expected ')'");
      return p;
    }
    if (lx.try_tok("mu ") || lx.try_tok("mu\t")) {
      std::string v = lx.ident();
      if (!lx.try_tok(".")) throw ludics_error("pattern: expected '.' after mu binder");
      return pmu(v, expr());
    }
    std::string id = lx.ident();
    if (id == "mu") {
      std::string v = lx.ident();
      if (!lx.try_tok(".")) throw ludics_error("pattern: expected '.' after mu binder");
      return pmu(v, expr());
    }
    if (std::isupper((unsigned char)id[0])) return pvar(id);
    return pname(id);
  }

  PatternPtr expr() {
    PatternPtr left = atom();
    for (;;) {
      if (lx.try_tok("(+)")) left = pplus(left, atom());
      else if (lx.try_tok("(*)")) left = ptensor(left, atom());
      else return left;
    }
  }
};

}  // namespace

PatternPtr parse_pattern(const std::string& text) {
  PatParser p{PatLexer{text}};
  PatternPtr res = p.expr();
  if (!p.lx.eof()) throw ludics_error("pattern: trailing input");
  return res;
}

bool pattern_mu_free(const PatternPtr& p) {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PMu>) return false;
        else if constexpr (std::is_same_v<T, PPlus> || std::is_same_v<T, PTensor>)
          return pattern_mu_free(n.left) && pattern_mu_free(n.right);
        else
          return true;
      },
      p->node);
}

bool is_steady(const PatternPtr& p) {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PVar>) return false;
        else if constexpr (std::is_same_v<T, PName>) return true;
        else if constexpr (std::is_same_v<T, PPlus>) {
          auto ok = [](const PatternPtr& a, const PatternPtr& b) {
            return is_steady(a) && (pattern_mu_free(b) || is_steady(b));
          };
          return ok(n.left, n.right) || ok(n.right, n.left);
        } else if constexpr (std::is_same_v<T, PTensor>)
          return is_steady(n.left) && is_steady(n.right);
        else
          return is_steady(n.body);
      },
      p->node);
}

}  // namespace ludics
