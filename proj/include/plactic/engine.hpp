#pragma once

// Generic rewriting engine over a Presentation2: applying steps, normal
// forms under several strategies, critical branching enumeration, and
// homotopical Knuth-Bendix completion with budgets.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "plactic/core.hpp"
#include "plactic/presentations.hpp"

namespace plactic {

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SignedStep {
  int rule = 0;
  int pos = 0;
  bool fwd = true;
};

struct Derivation {
  GenWord start;
  std::vector<SignedStep> steps;
};

// Order used to orient every preset:  shorter generator word first, ties by
// the first differing generator, longer column earlier.
inline Ord cmp_genwords(const GenWord& a, const GenWord& b) { return cmp_ll(a, b); }

inline bool apply_signed(const Presentation2& P, GenWord& w, const SignedStep& s) {
  if (s.rule < 0 || s.rule >= static_cast<int>(P.rules.size())) return false;
  const Rule2& r = P.rules[s.rule];
  const GenWord& from = s.fwd ? r.source : r.target;
  const GenWord& to = s.fwd ? r.target : r.source;
  if (s.pos < 0 || s.pos + from.size() > w.size()) return false;
  if (!std::equal(from.begin(), from.end(), w.begin() + s.pos)) return false;
  GenWord next(w.begin(), w.begin() + s.pos);
  next.insert(next.end(), to.begin(), to.end());
  next.insert(next.end(), w.begin() + s.pos + from.size(), w.end());
  w = std::move(next);
  return true;
}

inline std::pair<bool, GenWord> replay(const Presentation2& P, const Derivation& d) {
  GenWord w = d.start;
  for (const SignedStep& s : d.steps)
    if (!apply_signed(P, w, s)) return {false, w};
  return {true, w};
}

inline bool check_zigzag(const Presentation2& P, const Derivation& d) {
  return replay(P, d).first;
}

// All forward steps applicable to w, sorted by position then rule index.
inline std::vector<SignedStep> rewrite_steps(const Presentation2& P, const GenWord& w) {
  std::vector<SignedStep> out;
  for (size_t pos = 0; pos < w.size(); ++pos) {
    int node = 0;
    for (size_t k = pos; k < w.size(); ++k) {
      node = P.trie.child(node, w[k]);
      if (node < 0) break;
      for (int r : P.trie.nodes[node].rules)
        out.push_back({r, static_cast<int>(pos), true});
    }
  }
  std::sort(out.begin(), out.end(), [](const SignedStep& a, const SignedStep& b) {
    return a.pos != b.pos ? a.pos < b.pos : a.rule < b.rule;
  });
  return out;
}

namespace detail {

// Lowest-rule redex at the leftmost matching position at or right of `from`.
inline std::optional<SignedStep> leftmost_step(const Presentation2& P,
                                               const GenWord& w, size_t from) {
  for (size_t pos = from; pos < w.size(); ++pos) {
    int node = 0, best = -1;
    for (size_t k = pos; k < w.size(); ++k) {
      node = P.trie.child(node, w[k]);
      if (node < 0) break;
      for (int r : P.trie.nodes[node].rules)
        if (best < 0 || r < best) best = r;
    }
    if (best >= 0) return SignedStep{best, static_cast<int>(pos), true};
  }
  return std::nullopt;
}

}  // namespace detail

enum class Strategy { Leftmost, Rightmost, Random };

struct NormalizeResult {
  GenWord nf;
  Derivation deriv;
};

inline NormalizeResult normalize(const Presentation2& P, const GenWord& w,
                                 Strategy strategy = Strategy::Leftmost,
                                 std::uint64_t seed = 0,
                                 std::uint64_t step_limit = 1000000) {
  NormalizeResult res;
  res.deriv.start = w;
  GenWord cur = w;
  std::mt19937_64 rng(seed);
  std::uint64_t used = 0;
  if (strategy == Strategy::Leftmost) {
    // Everything left of a just-rewritten position stays reduced, so the
    // scan resumes one source length back instead of from the start.
    size_t from = 0;
    while (auto s = detail::leftmost_step(P, cur, from)) {
      if (++used > step_limit) throw ResourceError("normalize: step limit exceeded");
      apply_signed(P, cur, *s);
      res.deriv.steps.push_back(*s);
      size_t p = static_cast<size_t>(s->pos);
      from = p + 1 > P.trie.max_len ? p + 1 - P.trie.max_len : 0;
    }
    res.nf = std::move(cur);
    return res;
  }
  for (;;) {
    std::vector<SignedStep> steps = rewrite_steps(P, cur);
    if (steps.empty()) break;
    if (++used > step_limit) throw ResourceError("normalize: step limit exceeded");
    SignedStep pick = steps.front();
    if (strategy == Strategy::Rightmost) {
      pick = steps.back();
      for (auto it = steps.rbegin(); it != steps.rend() && it->pos == pick.pos; ++it)
        pick = *it;  // smallest rule index at the rightmost position
    } else if (strategy == Strategy::Random) {
      pick = steps[static_cast<size_t>(rng() % steps.size())];
    }
    apply_signed(P, cur, pick);
    res.deriv.steps.push_back(pick);
  }
  res.nf = std::move(cur);
  return res;
}

// True when every rule strictly decreases the orientation order.
inline bool validate_order(const Presentation2& P) {
  for (const Rule2& r : P.rules)
    if (cmp_genwords(r.target, r.source) != Ord::LT) return false;
  return true;
}

struct Branching {
  GenWord word;  // minimal superposition of the two rule sources
  SignedStep left;
  SignedStep right;
};

namespace detail {

// Emit the critical branchings of the ordered rule pair (i, j): proper
// overlaps (j's source sticking out to the right) and inclusions of j's
// source inside i's.  Aspherical and symmetric duplicates are skipped.
inline void pair_branchings(const Presentation2& P, int i, int j,
                            std::vector<Branching>& out) {
  const GenWord& si = P.rules[i].source;
  const GenWord& sj = P.rules[j].source;
  size_t li = si.size(), lj = sj.size();
  for (size_t d = 1; d < li; ++d) {
    if (d + lj <= li) continue;  // inclusion, handled below
    bool match = true;
    for (size_t k = d; k < li && match; ++k) match = si[k] == sj[k - d];
    if (!match) continue;
    Branching b;
    b.word = si;
    b.word.insert(b.word.end(), sj.begin() + (li - d), sj.end());
    b.left = {i, 0, true};
    b.right = {j, static_cast<int>(d), true};
    out.push_back(std::move(b));
  }
  if (lj > li) return;
  for (size_t d = 0; d + lj <= li; ++d) {
    if (i == j && d == 0) continue;                    // aspherical
    if (d == 0 && li == lj && i > j) continue;          // equal sources: count once
    if (!std::equal(sj.begin(), sj.end(), si.begin() + d)) continue;
    Branching b;
    b.word = si;
    b.left = {i, 0, true};
    b.right = {j, static_cast<int>(d), true};
    out.push_back(std::move(b));
  }
}

struct FirstGenIndex {
  std::unordered_map<Gen, std::vector<int>> map;
  explicit FirstGenIndex(const Presentation2& P) {
    for (int r = 0; r < static_cast<int>(P.rules.size()); ++r)
      map[P.rules[r].source.front()].push_back(r);
  }
};

}  // namespace detail

inline std::vector<Branching> critical_branchings(const Presentation2& P) {
  std::vector<Branching> out;
  detail::FirstGenIndex idx(P);
  for (int i = 0; i < static_cast<int>(P.rules.size()); ++i) {
    const GenWord& si = P.rules[i].source;
    std::vector<int> partners;
    for (size_t d = 0; d < si.size(); ++d) {
      auto it = idx.map.find(si[d]);
      if (it == idx.map.end()) continue;
      partners.insert(partners.end(), it->second.begin(), it->second.end());
    }
    std::sort(partners.begin(), partners.end());
    partners.erase(std::unique(partners.begin(), partners.end()), partners.end());
    for (int j : partners) detail::pair_branchings(P, i, j, out);
  }
  return out;
}

struct KBCell {
  GenWord source;
  Derivation left;
  Derivation right;
};

struct CompletionBudget {
  std::uint64_t max_rules = 10000;
  std::uint64_t max_branchings = 100000;
};

struct CompletionResult {
  Presentation2 system;
  std::vector<KBCell> cells;
  bool completed = false;
  std::uint64_t branchings_processed = 0;
  std::uint64_t rules_added = 0;
};

namespace detail {

struct LLBefore {
  bool operator()(const GenWord& a, const GenWord& b) const {
    return cmp_ll(a, b) == Ord::LT;
  }
};

inline void enqueue_pairs(const Presentation2& P, int i, int j,
                          std::multimap<GenWord, Branching, LLBefore>& pending) {
  std::vector<Branching> found;
  pair_branchings(P, i, j, found);
  if (i != j) pair_branchings(P, j, i, found);
  for (Branching& b : found) {
    GenWord key = b.word;
    pending.emplace(std::move(key), std::move(b));
  }
}

}  // namespace detail

// Squier-style completion: process branchings smallest source first (FIFO on
// ties), record one 3-cell per branching, orient any new rule larger side to
// smaller, and stop when nothing is pending or a budget is hit.
inline CompletionResult complete(const Presentation2& input,
                                 CompletionBudget budget = {}) {
  CompletionResult res;
  res.system = input;
  Presentation2& P = res.system;

  std::multimap<GenWord, Branching, detail::LLBefore> pending;
  int r0 = static_cast<int>(P.rules.size());
  for (int i = 0; i < r0; ++i)
    for (int j = i; j < r0; ++j) detail::enqueue_pairs(P, i, j, pending);

  while (!pending.empty()) {
    if (res.branchings_processed >= budget.max_branchings) return res;
    Branching b = pending.begin()->second;
    pending.erase(pending.begin());
    ++res.branchings_processed;

    NormalizeResult ln, rn;
    {
      GenWord w = b.word;
      apply_signed(P, w, b.left);
      ln = normalize(P, w);
      ln.deriv.steps.insert(ln.deriv.steps.begin(), b.left);
      ln.deriv.start = b.word;
    }
    {
      GenWord w = b.word;
      apply_signed(P, w, b.right);
      rn = normalize(P, w);
      rn.deriv.steps.insert(rn.deriv.steps.begin(), b.right);
      rn.deriv.start = b.word;
    }

    if (ln.nf != rn.nf) {
      if (res.rules_added >= budget.max_rules) return res;
      bool left_larger = cmp_genwords(rn.nf, ln.nf) == Ord::LT;
      Rule2 r;
      r.source = left_larger ? ln.nf : rn.nf;
      r.target = left_larger ? rn.nf : ln.nf;
      r.kind = RuleKind::Added;
      r.name = "kb" + std::to_string(res.rules_added + 1);
      int rid = static_cast<int>(P.rules.size());
      P.rules.push_back(std::move(r));
      P.index_rule(rid);
      ++res.rules_added;
      (left_larger ? ln : rn).deriv.steps.push_back({rid, 0, true});
      for (int j = 0; j <= rid; ++j) detail::enqueue_pairs(P, rid, j, pending);
    }

    res.cells.push_back({b.word, std::move(ln.deriv), std::move(rn.deriv)});
  }
  res.completed = true;
  return res;
}

}  // namespace plactic
