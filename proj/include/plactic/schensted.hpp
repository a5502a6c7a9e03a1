#pragma once

// Row insertion, the tableau map P, the longest-non-decreasing-subsequence
// statistic, and the plactic-equality oracle.

#include <algorithm>
#include <vector>

#include "plactic/core.hpp"

namespace plactic {

namespace detail {

// Insert y into planar rows (top row first, the longest). Bumps the minimal
// entry > y down to the next row.
inline void row_insert(std::vector<Word>& rows, Letter y) {
  size_t r = 0;
  for (;;) {
    if (r == rows.size()) {
      rows.push_back({y});
      return;
    }
    Word& row = rows[r];
    auto it = std::upper_bound(row.begin(), row.end(), y);
    if (it == row.end()) {
      row.push_back(y);
      return;
    }
    std::swap(*it, y);
    ++r;
  }
}

}  // namespace detail

inline Tableau insert(const Tableau& t, Letter y) {
  std::vector<Word> rows = t.rows();
  detail::row_insert(rows, y);
  return tableau_from_rows(rows);
}

inline Tableau p_tableau(const Word& w) {
  std::vector<Word> rows;
  for (Letter y : w) detail::row_insert(rows, y);
  return tableau_from_rows(rows);
}

// Number of columns of P(w) = length of the longest non-decreasing
// subsequence of w.
inline int lnds(const Word& w) {
  return static_cast<int>(p_tableau(w).columns.size());
}

inline bool plactic_eq(const Word& u, const Word& v) {
  return p_tableau(u) == p_tableau(v);
}

}  // namespace plactic
