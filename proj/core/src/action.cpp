#include "ludics/action.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ludics {

LocAction daimon_action() { return LocAction{ActKind::Daimon, "", "", {}}; }

namespace {
void check_action(const LocAction& a) {
  std::set<Var> seen{a.address};
  for (const auto& v : a.binders)
    if (!seen.insert(v).second)
      throw ludics_error("located action variables must be distinct");
}
}  // namespace

LocAction pos_action(Var address, Name name, std::vector<Var> binders) {
  LocAction a{ActKind::Pos, std::move(address), std::move(name), std::move(binders)};
  check_action(a);
  return a;
}

LocAction neg_action(Var address, Name name, std::vector<Var> binders) {
  LocAction a{ActKind::Neg, std::move(address), std::move(name), std::move(binders)};
  check_action(a);
  return a;
}

LocAction bar(const LocAction& a) {
  if (!a.proper()) throw ludics_error("bar applies to proper actions only");
  LocAction b = a;
  b.kind = a.kind == ActKind::Pos ? ActKind::Neg : ActKind::Pos;
  return b;
}

std::string render_action(const LocAction& a) {
  if (a.kind == ActKind::Daimon) return "#";
  std::ostringstream out;
  if (a.kind == ActKind::Pos) {
    out << a.address << "|" << a.name << "<";
    for (size_t i = 0; i < a.binders.size(); ++i) {
      if (i) out << ",";
      out << a.binders[i];
    }
    out << ">";
  } else {
    out << a.name << "_" << a.address << "(";
    for (size_t i = 0; i < a.binders.size(); ++i) {
      if (i) out << ",";
      out << a.binders[i];
    }
    out << ")";
  }
  return out.str();
}

AjSeq AjSeq::prefix(size_t n) const {
  AjSeq s;
  s.actions.assign(actions.begin(), actions.begin() + std::min(n, actions.size()));
  return s;
}

bool AjSeq::operator<(const AjSeq& o) const {
  return render_seq(*this) < render_seq(o);
}

std::string render_seq(const AjSeq& s) {
  std::ostringstream out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out << " ";
    out << render_action(s[i]);
  }
  return out.str();
}

std::optional<size_t> justifier(const AjSeq& s, size_t i) {
  if (!s[i].proper()) return std::nullopt;
  const Var& addr = s[i].address;
  for (size_t j = i; j-- > 0;) {
    const auto& b = s[j].binders;
    if (std::find(b.begin(), b.end(), addr) != b.end()) return j;
  }
  return std::nullopt;
}

bool is_aj_sequence(const AjSeq& s) {
  std::set<Var> addresses;
  std::set<Var> bound;
  for (size_t i = 0; i < s.size(); ++i) {
    const LocAction& a = s[i];
    if (i > 0 && a.polarity() == s[i - 1].polarity()) return false;  // Alternation
    if (a.kind == ActKind::Daimon && i + 1 != s.size()) return false;  // Daimon last
    if (a.proper()) {
      if (!addresses.insert(a.address).second) return false;  // Linearity
      for (const auto& v : a.binders)
        if (!bound.insert(v).second) return false;
      auto j = justifier(s, i);
      if (j && s[*j].polarity() == a.polarity()) return false;
    }
  }
  return true;
}

AjSeq dual(const AjSeq& s) {
  AjSeq out;
  if (!s.empty() && s.actions.back().kind == ActKind::Daimon) {
    for (size_t i = 0; i + 1 < s.size(); ++i) out.push(bar(s[i]));
  } else {
    for (size_t i = 0; i < s.size(); ++i) out.push(bar(s[i]));
    out.push(daimon_action());
  }
  return out;
}

View view_of(const AjSeq& s) {
  if (s.empty()) return {};
  const LocAction& last = s.actions.back();
  AjSeq rest = s.prefix(s.size() - 1);
  if (last.polarity() == Polarity::Positive) {
    View v = view_of(rest);
    v.push(last);
    return v;
  }
  auto j = justifier(s, s.size() - 1);
  View v = j ? view_of(s.prefix(*j + 1)) : View{};
  v.push(last);
  return v;
}

View anti_view_of(const AjSeq& s) {
  if (s.empty()) return {};
  const LocAction& last = s.actions.back();
  AjSeq rest = s.prefix(s.size() - 1);
  if (last.polarity() == Polarity::Negative || last.kind == ActKind::Daimon) {
    View v = anti_view_of(rest);
    v.push(last);
    return v;
  }
  auto j = justifier(s, s.size() - 1);
  View v = j ? anti_view_of(s.prefix(*j + 1)) : View{};
  v.push(last);
  return v;
}

View trivial_view_of(const AjSeq& s) {
  if (s.empty()) return {};
  const LocAction& last = s.actions.back();
  AjSeq rest = s.prefix(s.size() - 1);
  if (last.kind == ActKind::Daimon) {
    View v = trivial_view_of(rest);
    v.push(last);
    return v;
  }
  auto j = justifier(s, s.size() - 1);
  if (!j) return View{{last}};
  View v = trivial_view_of(s.prefix(*j + 1));
  v.push(last);
  return v;
}

namespace {

bool contains_action(const View& v, const LocAction& a) {
  return std::find(v.actions.begin(), v.actions.end(), a) != v.actions.end();
}

}  // namespace

bool is_path(const AjSeq& s) {
  if (!is_aj_sequence(s)) return false;
  if (!s.empty() && s.actions.back().polarity() != Polarity::Positive) return false;
  for (size_t i = 0; i < s.size(); ++i) {
    auto j = justifier(s, i);
    if (!j) continue;
    AjSeq pre = s.prefix(i);
    if (s[i].polarity() == Polarity::Positive) {
      if (!contains_action(view_of(pre), s[*j])) return false;  // P-visibility
    } else {
      if (!contains_action(anti_view_of(pre), s[*j])) return false;  // O-visibility
    }
  }
  return true;
}

bool is_view(const AjSeq& s) {
  if (!is_aj_sequence(s)) return false;
  for (size_t i = 1; i < s.size(); ++i) {
    if (s[i].kind != ActKind::Neg) continue;
    auto j = justifier(s, i);
    if (!j || *j != i - 1) return false;
  }
  return true;
}

bool is_trivial_view(const AjSeq& s) {
  if (!is_aj_sequence(s)) return false;
  for (size_t i = 1; i < s.size(); ++i) {
    if (!s[i].proper()) continue;
    auto j = justifier(s, i);
    if (!j || *j != i - 1) return false;
  }
  return true;
}

bool is_well_bracketed(const AjSeq& s) {
  // Hereditary justification chains, computed once.
  std::vector<std::optional<size_t>> just(s.size());
  for (size_t i = 0; i < s.size(); ++i) just[i] = justifier(s, i);
  auto hereditarily_justified_by = [&](size_t i, size_t root) {
    for (std::optional<size_t> k = i; k; k = just[*k])
      if (*k == root) return true;
    return false;
  };
  for (size_t i = 0; i < s.size(); ++i) {
    if (!just[i]) continue;
    size_t r = *just[i];
    for (size_t k = r + 1; k < i; ++k) {
      if (!s[k].proper()) return false;  // a daimon strictly inside a bracket
      if (!hereditarily_justified_by(k, r)) return false;
    }
  }
  return true;
}

std::optional<Var> hereditary_root(const AjSeq& s, size_t i) {
  size_t k = i;
  if (!s[i].proper()) {
    View v = view_of(s.prefix(i));
    if (v.empty()) return std::nullopt;
    const LocAction& pa = v.actions.back();
    bool found = false;
    for (size_t j = 0; j < i; ++j)
      if (s[j] == pa) {
        k = j;
        found = true;
      }
    if (!found) return std::nullopt;
  }
  for (;;) {
    auto j = justifier(s, k);
    if (!j) return s[k].address;
    k = *j;
  }
}

AjSeq canonical_seq(const AjSeq& s) {
  std::map<Var, Var> rn;
  int counter = 0;
  AjSeq out;
  for (const auto& a : s.actions) {
    if (!a.proper()) {
      out.push(a);
      continue;
    }
    LocAction b = a;
    auto it = rn.find(a.address);
    if (it != rn.end()) b.address = it->second;
    for (auto& v : b.binders) {
      Var w = "a" + std::to_string(counter++);
      rn[v] = w;
      v = w;
    }
    out.push(std::move(b));
  }
  return out;
}

}  // namespace ludics
