#include "ludics/shuffle.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace ludics {

namespace {

Polarity seq_polarity(const AjSeq& s) {
  // The empty path only arises on the negative side.
  if (s.empty()) return Polarity::Negative;
  return s[0].polarity();
}

struct Merge {
  const AjSeq& s;
  const AjSeq& t;
  size_t max_len;
  std::map<Var, Var> phi;  // t variables -> merged variables
  VarSet taken;            // variables already in use on the merged side
  int fresh_counter = 0;
  AjSeq acc;
  PathSet out;

  Var fresh() {
    for (;;) {
      Var v = "m" + std::to_string(fresh_counter++);
      if (!taken.count(v)) {
        taken.insert(v);
        return v;
      }
    }
  }

  // Translates a t-action through phi, minting fresh names for new binders.
  LocAction translate(const LocAction& a, std::vector<std::pair<Var, Var>>* minted) {
    if (!a.proper()) return a;
    LocAction b = a;
    auto it = phi.find(a.address);
    if (it != phi.end()) b.address = it->second;
    for (auto& v : b.binders) {
      auto bit = phi.find(v);
      if (bit != phi.end()) {
        v = bit->second;
      } else {
        Var w = fresh();
        phi[v] = w;
        minted->emplace_back(v, w);
        v = w;
      }
    }
    return b;
  }

  // Checks whether s-action a and t-action b denote the same action under phi
  // (same kind/name, same address, binders unifiable).
  bool unifiable(const LocAction& a, const LocAction& b) {
    if (a.kind != b.kind || a.name != b.name) return false;
    if (!a.proper()) return true;
    if (a.binders.size() != b.binders.size()) return false;
    auto it = phi.find(b.address);
    Var baddr = it != phi.end() ? it->second : b.address;
    if (baddr != a.address) return false;
    for (size_t k = 0; k < a.binders.size(); ++k) {
      auto bit = phi.find(b.binders[k]);
      if (bit != phi.end() && bit->second != a.binders[k]) return false;
    }
    return true;
  }

  void push_checked(const LocAction& a, const std::function<void()>& k) {
    acc.push(a);
    if (is_aj_sequence(acc)) k();
    acc.actions.pop_back();
  }

  void run(size_t i, size_t j) {
    // Every remaining action of each side must still appear (shared ones
    // once), so the result has at least this length.
    size_t lower = acc.size() + std::max(s.size() - i, t.size() - j);
    if (lower > max_len) return;
    if (i == s.size() && j == t.size()) {
      if (is_path(acc)) out.insert(canonical_seq(acc));
      return;
    }
    // Collect positive-ended intermediate results only when both sides are
    // fully consumed; projections must recover s and t entirely.
    if (i < s.size() && j < t.size() && unifiable(s[i], t[j])) {
      std::vector<Var> minted;
      for (size_t k = 0; k < s[i].binders.size(); ++k) {
        if (!phi.count(t[j].binders[k])) {
          phi[t[j].binders[k]] = s[i].binders[k];
          minted.push_back(t[j].binders[k]);
        }
      }
      push_checked(s[i], [&] { run(i + 1, j + 1); });
      for (const auto& v : minted) phi.erase(v);
    }
    if (i < s.size()) {
      push_checked(s[i], [&] { run(i + 1, j); });
    }
    if (j < t.size()) {
      std::vector<std::pair<Var, Var>> minted;
      LocAction b = translate(t[j], &minted);
      push_checked(b, [&] { run(i, j + 1); });
      for (auto& [v, w] : minted) {
        phi.erase(v);
        taken.erase(w);
      }
    }
  }
};

}  // namespace

std::optional<PathSet> shuffle(const AjSeq& s, const AjSeq& t, size_t max_len) {
  if (seq_polarity(s) != seq_polarity(t)) return std::nullopt;
  Merge m{s, t, max_len};
  for (const auto& a : s.actions) {
    if (a.proper()) {
      m.taken.insert(a.address);
      for (const auto& v : a.binders) m.taken.insert(v);
    }
  }
  if (seq_polarity(s) == Polarity::Positive) {
    if (s.empty() || t.empty()) return std::nullopt;
    if (!m.unifiable(s[0], t[0])) return std::nullopt;
  }
  m.run(0, 0);
  return m.out;
}

std::optional<PathSet> anti_shuffle(const AjSeq& s, const AjSeq& t, size_t max_len) {
  auto r = shuffle(dual(s), dual(t), max_len + 1);
  if (!r) return std::nullopt;
  PathSet out;
  for (const auto& u : *r) out.insert(canonical_seq(dual(u)));
  return out;
}

PathSet set_shuffle(const PathSet& S, const PathSet& T, size_t max_len) {
  PathSet out;
  for (const auto& s : S)
    for (const auto& t : T) {
      auto r = shuffle(s, t, max_len);
      if (r) out.insert(r->begin(), r->end());
    }
  return out;
}

PathSet set_anti_shuffle(const PathSet& S, const PathSet& T, size_t max_len) {
  PathSet out;
  for (const auto& s : S)
    for (const auto& t : T) {
      auto r = anti_shuffle(s, t, max_len);
      if (r) out.insert(r->begin(), r->end());
    }
  return out;
}

namespace {

bool stable(const PathSet& V, size_t max_len, AjSeq* witness, bool anti) {
  for (const auto& s : V)
    for (const auto& t : V) {
      auto r = anti ? anti_shuffle(s, t, max_len) : shuffle(s, t, max_len);
      if (!r) continue;
      for (const auto& u : *r) {
        if (!V.count(u)) {
          if (witness) *witness = u;
          return false;
        }
      }
    }
  return true;
}

}  // namespace

bool shuffle_stable(const PathSet& V, size_t max_len, AjSeq* witness) {
  return stable(V, max_len, witness, false);
}

bool anti_shuffle_stable(const PathSet& V, size_t max_len, AjSeq* witness) {
  return stable(V, max_len, witness, true);
}

}  // namespace ludics
