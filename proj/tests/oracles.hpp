#pragma once

// Independent reference implementations used only by the tests. Everything
// here is deliberately naive: breadth-first closures, quadratic scans, and
// direct definitions, to cross-check the optimized library code.

#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "plactic/core.hpp"
#include "plactic/engine.hpp"
#include "plactic/presentations.hpp"

namespace oracle {

using plactic::Col;
using plactic::GenWord;
using plactic::Letter;
using plactic::Presentation2;
using plactic::Word;

// Words obtained from w by one Knuth exchange, in either direction.
inline std::vector<Word> knuth_neighbors(const Word& w) {
  std::vector<Word> out;
  for (size_t p = 0; p + 3 <= w.size(); ++p) {
    Letter a = w[p], b = w[p + 1], c = w[p + 2];
    // zxy <-> xzy for x <= y < z: swap the first two letters
    if (b <= c && c < a) {  // (a,b,c) = (z,x,y)
      Word m = w;
      std::swap(m[p], m[p + 1]);
      out.push_back(m);
    }
    if (a <= c && c < b) {  // (a,b,c) = (x,z,y)
      Word m = w;
      std::swap(m[p], m[p + 1]);
      out.push_back(m);
    }
    // yzx <-> yxz for x < y <= z: swap the last two letters
    if (c < a && a <= b) {  // (a,b,c) = (y,z,x)
      Word m = w;
      std::swap(m[p + 1], m[p + 2]);
      out.push_back(m);
    }
    if (b < a && a <= c) {  // (a,b,c) = (y,x,z)
      Word m = w;
      std::swap(m[p + 1], m[p + 2]);
      out.push_back(m);
    }
  }
  return out;
}

// The whole Knuth congruence class of w, by breadth-first closure.
inline std::set<Word> knuth_class(const Word& w, size_t cap = 2000000) {
  std::set<Word> seen{w};
  std::queue<Word> todo;
  todo.push(w);
  while (!todo.empty()) {
    Word cur = todo.front();
    todo.pop();
    for (Word& m : knuth_neighbors(cur))
      if (seen.insert(m).second) {
        if (seen.size() > cap) throw std::runtime_error("knuth_class: cap exceeded");
        todo.push(m);
      }
  }
  return seen;
}

inline bool knuth_closure_eq(const Word& u, const Word& v) {
  if (u.size() != v.size()) return false;
  return knuth_class(u).count(v) != 0;
}

// Longest weakly non-decreasing subsequence, quadratic dynamic program.
inline int lnds_dp(const Word& w) {
  std::vector<int> best(w.size(), 1);
  int ans = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    for (size_t j = 0; j < i; ++j)
      if (w[j] <= w[i]) best[i] = std::max(best[i], best[j] + 1);
    ans = std::max(ans, best[i]);
  }
  return ans;
}

// Readings taken directly off a planar row grid (rows top to bottom).
inline Word column_reading_grid(const std::vector<Word>& rows) {
  Word out;
  if (rows.empty()) return out;
  for (size_t c = 0; c < rows.front().size(); ++c) {
    size_t r = rows.size();
    while (r > 0 && rows[r - 1].size() <= c) --r;
    for (; r > 0; --r) out.push_back(rows[r - 1][c]);
  }
  return out;
}

inline Word japanese_reading_grid(const std::vector<Word>& rows) {
  Word out;
  if (rows.empty()) return out;
  for (size_t c = rows.front().size(); c > 0; --c)
    for (size_t r = 0; r < rows.size() && rows[r].size() >= c; ++r)
      out.push_back(rows[r][c - 1]);
  return out;
}

// Every normal form reachable from w by any reduction order.
inline std::set<GenWord> all_normal_forms(const Presentation2& P, const GenWord& w,
                                          size_t cap = 200000) {
  std::set<GenWord> nfs;
  std::set<GenWord> seen{w};
  std::queue<GenWord> todo;
  todo.push(w);
  while (!todo.empty()) {
    GenWord cur = todo.front();
    todo.pop();
    auto steps = plactic::rewrite_steps(P, cur);
    if (steps.empty()) {
      nfs.insert(cur);
      continue;
    }
    for (const auto& s : steps) {
      GenWord next = cur;
      plactic::apply_signed(P, next, s);
      if (seen.insert(next).second) {
        if (seen.size() > cap) throw std::runtime_error("all_normal_forms: cap exceeded");
        todo.push(next);
      }
    }
  }
  return nfs;
}

// Root operators by the literal bracketing description: keep only the
// letters i and i+1, repeatedly erase adjacent (i, i+1) pairs, then act on
// the survivors.
namespace detail {
inline std::vector<size_t> surviving(const Word& w, int i) {
  std::vector<size_t> idx;
  for (size_t p = 0; p < w.size(); ++p)
    if (w[p] == i || w[p] == i + 1) idx.push_back(p);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t k = 0; k + 1 < idx.size(); ++k)
      if (w[idx[k]] == i && w[idx[k + 1]] == i + 1) {
        idx.erase(idx.begin() + k, idx.begin() + k + 2);
        changed = true;
        break;
      }
  }
  return idx;
}
}  // namespace detail

inline std::optional<Word> root_f_naive(int i, const Word& w) {
  for (size_t p : detail::surviving(w, i))
    if (w[p] == i) {  // leftmost surviving i
      Word out = w;
      out[p] = i + 1;
      return out;
    }
  return std::nullopt;
}

inline std::optional<Word> root_e_naive(int i, const Word& w) {
  auto idx = detail::surviving(w, i);
  for (auto it = idx.rbegin(); it != idx.rend(); ++it)
    if (w[*it] == i + 1) {  // rightmost surviving i+1
      Word out = w;
      out[*it] = i;
      return out;
    }
  return std::nullopt;
}

// Tableaux over [n] with at most q columns, counted by a direct path walk
// over adjacent-column compatibility (the empty tableau included).
inline std::uint64_t tableau_count_brute(int n, int q) {
  std::vector<std::vector<Letter>> cols;  // ascending letter vectors
  for (Col c = 1; c < (Col{1} << n); ++c) {
    std::vector<Letter> asc;
    for (int i = 1; i <= n; ++i)
      if (c & (Col{1} << (i - 1))) asc.push_back(i);
    cols.push_back(asc);
  }
  auto compat = [](const std::vector<Letter>& a, const std::vector<Letter>& b) {
    if (b.size() > a.size()) return false;
    for (size_t k = 0; k < b.size(); ++k)
      if (a[k] > b[k]) return false;
    return true;
  };
  size_t m = cols.size();
  std::vector<std::uint64_t> ways(m, 1);  // sequences of the current length ending at j
  std::uint64_t total = 1;                // the empty tableau
  for (int len = 1; len <= q; ++len) {
    if (len > 1) {
      std::vector<std::uint64_t> next(m, 0);
      for (size_t j = 0; j < m; ++j)
        for (size_t i = 0; i < m; ++i)
          if (compat(cols[i], cols[j])) next[j] += ways[i];
      ways = std::move(next);
    }
    for (size_t j = 0; j < m; ++j) total += ways[j];
  }
  return total;
}

// Deterministic word generators for the randomized sweeps.
inline Word random_word(std::mt19937_64& rng, int n, int len) {
  Word w(len);
  for (int k = 0; k < len; ++k) w[k] = static_cast<Letter>(rng() % n + 1);
  return w;
}

inline Word random_word_upto(std::mt19937_64& rng, int n, int maxlen) {
  return random_word(rng, n, static_cast<int>(rng() % (maxlen + 1)));
}

// All words over [n] of length 1..maxlen (used by the exhaustive sweeps).
inline std::vector<Word> all_words(int n, int maxlen) {
  std::vector<Word> out;
  for (int len = 1; len <= maxlen; ++len) {
    Word w(len, 1);
    for (;;) {
      out.push_back(w);
      int k = len - 1;
      while (k >= 0 && w[k] == n) w[k--] = 1;
      if (k < 0) break;
      ++w[k];
    }
  }
  return out;
}

}  // namespace oracle
