#pragma once

// Root operators on words via the bracketing algorithm, Yamanouchi words,
// deterministic raising to highest weight, crystal components, and the
// path-equivalence normal form.

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "plactic/core.hpp"
#include "plactic/engine.hpp"
#include "plactic/schensted.hpp"

namespace plactic {

inline std::vector<int> weight_vec(const Word& w) {
  int m = 0;
  for (Letter x : w) m = std::max(m, x);
  std::vector<int> wt(m, 0);
  for (Letter x : w) ++wt[x - 1];
  return wt;
}

namespace detail {

// Bracketing for the letters (i, i+1): positions of the surviving i's and
// the surviving (i+1)'s after cancelling adjacent (i, i+1) pairs.
inline std::pair<std::vector<int>, std::vector<int>> bracket(const Word& w, int i) {
  std::vector<int> low, high;
  for (int p = 0; p < static_cast<int>(w.size()); ++p) {
    if (w[p] == i) low.push_back(p);
    else if (w[p] == i + 1) {
      if (!low.empty()) low.pop_back();
      else high.push_back(p);
    }
  }
  return {low, high};
}

}  // namespace detail

// f_i: leftmost surviving i becomes i+1.
inline std::optional<Word> root_f(int i, const Word& w) {
  if (i < 1) throw std::out_of_range("root_f: i >= 1");
  auto [low, high] = detail::bracket(w, i);
  if (low.empty()) return std::nullopt;
  Word out = w;
  out[low.front()] = i + 1;
  return out;
}

// e_i: rightmost surviving i+1 becomes i.
inline std::optional<Word> root_e(int i, const Word& w) {
  if (i < 1) throw std::out_of_range("root_e: i >= 1");
  auto [low, high] = detail::bracket(w, i);
  if (high.empty()) return std::nullopt;
  Word out = w;
  out[high.back()] = i;
  return out;
}

inline std::optional<Word> root_op(char dir, int i, const Word& w) {
  if (dir == 'f') return root_f(i, w);
  if (dir == 'e') return root_e(i, w);
  throw std::invalid_argument("root_op: dir must be 'e' or 'f'");
}

// Every prefix has weakly decreasing letter multiplicities.
inline bool is_yamanouchi(const Word& w) {
  std::vector<int> mult(kMaxN + 1, 0);
  for (Letter x : w) {
    ++mult[x];
    if (x > 1 && mult[x] > mult[x - 1]) return false;
  }
  return true;
}

// Deterministic raising: smallest applicable index first, recorded in order.
inline std::pair<Word, std::vector<int>> highest_weight(const Word& w) {
  Word cur = w;
  std::vector<int> seq;
  int m = 0;
  for (Letter x : w) m = std::max(m, x);
  for (;;) {
    bool moved = false;
    for (int i = 1; i < m && !moved; ++i)
      if (auto up = root_e(i, cur)) {
        cur = *up;
        seq.push_back(i);
        moved = true;
      }
    if (!moved) return {cur, seq};
  }
}

// The tableau with weight_i copies of i in row i, read column-wise.
inline Word yamanouchi_tableau(const Word& w) {
  if (!is_yamanouchi(w)) throw std::domain_error("yamanouchi_tableau: not Yamanouchi");
  std::vector<int> wt = weight_vec(w);
  std::vector<Word> rows;
  for (size_t i = 0; i < wt.size(); ++i) {
    if (wt[i] == 0) break;
    rows.emplace_back(wt[i], static_cast<Letter>(i + 1));
  }
  return japanese_reading(tableau_from_rows(rows));
}

// Words are compared through their reversals: the operators above read the
// word in the opposite direction to Schensted insertion, and conjugating by
// reversal aligns the two (see the README's conventions note).
inline bool path_eq(const Word& u, const Word& v) {
  Word ru(u.rbegin(), u.rend()), rv(v.rbegin(), v.rend());
  auto [hu, su] = highest_weight(ru);
  auto [hv, sv] = highest_weight(rv);
  return su == sv && weight_vec(hu) == weight_vec(hv);
}

// Raise to highest weight, straighten to the canonical tableau word of that
// weight, and lower back along the recorded sequence.
inline Word crys_normalize(const Word& w) {
  Word r(w.rbegin(), w.rend());
  auto [hw, seq] = highest_weight(r);
  Word y = yamanouchi_tableau(hw);
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
    auto down = root_f(*it, y);
    if (!down) throw std::logic_error("crys_normalize: lowering step vanished");
    y = *down;
  }
  return Word(y.rbegin(), y.rend());
}

// The path attached to a single column generator: its letters in increasing
// order, i.e. the Japanese reading of the one-column tableau.
inline Word ls_path_of_column(Col c) {
  Word w = col_word(c);
  std::reverse(w.begin(), w.end());
  return w;
}

struct CrystalGraph {
  std::vector<Word> vertices;              // in discovery order
  std::vector<std::tuple<int, int, int>> edges;  // (source index, i, target index)
};

inline CrystalGraph crystal_component(int n, const Word& w, size_t cap = 100000) {
  CrystalGraph g;
  std::map<Word, int> index;
  std::queue<int> todo;
  auto visit = [&](const Word& x) {
    auto it = index.find(x);
    if (it != index.end()) return it->second;
    if (g.vertices.size() >= cap) throw ResourceError("crystal_component: cap exceeded");
    int id = static_cast<int>(g.vertices.size());
    index.emplace(x, id);
    g.vertices.push_back(x);
    todo.push(id);
    return id;
  };
  visit(w);
  while (!todo.empty()) {
    int src = todo.front();
    todo.pop();
    Word cur = g.vertices[src];
    for (int i = 1; i < n; ++i) {
      if (auto down = root_f(i, cur)) {
        int tgt = visit(*down);
        g.edges.emplace_back(src, i, tgt);
      }
      if (auto up = root_e(i, cur)) visit(*up);
    }
  }
  return g;
}

}  // namespace plactic
