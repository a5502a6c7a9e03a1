#pragma once

// Letters, words, columns, tableaux, their readings, and the total orders
// used to orient rewriting rules.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace plactic {

constexpr int kMaxN = 16;

using Letter = int;                // 1..n
using Word = std::vector<Letter>;  // possibly empty

// A column is a strictly decreasing nonempty word, i.e. a nonempty subset of
// [n]. Encoded as a bitmask: bit (i-1) set <=> letter i present.
using Col = std::uint32_t;

inline int col_len(Col c) { return std::popcount(c); }
inline bool col_valid(Col c, int n) {
  return c != 0 && (c >> n) == 0;
}
inline Letter col_min(Col c) { return std::countr_zero(c) + 1; }
inline Letter col_max(Col c) { return 32 - std::countl_zero(c); }

// Decreasing word x_p...x_1 of a column.
inline Word col_word(Col c) {
  Word w;
  for (int i = col_max(c); i >= 1; --i)
    if (c & (Col{1} << (i - 1))) w.push_back(i);
  return w;
}

inline Col col_from_word(const Word& w) {
  Col c = 0;
  for (Letter x : w) c |= Col{1} << (x - 1);
  return c;
}

inline bool is_column(const Word& w) {
  if (w.empty()) return false;
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] <= w[i + 1]) return false;
  return true;
}

enum class Ord { LT, EQ, GT };

inline Ord cmp_lex(const Word& a, const Word& b) {
  size_t m = std::min(a.size(), b.size());
  for (size_t i = 0; i < m; ++i) {
    if (a[i] < b[i]) return Ord::LT;
    if (a[i] > b[i]) return Ord::GT;
  }
  if (a.size() < b.size()) return Ord::LT;
  if (a.size() > b.size()) return Ord::GT;
  return Ord::EQ;
}

// Degree-lexicographic on arbitrary words: shorter first, then lex.
inline Ord cmp_deglex(const Word& a, const Word& b) {
  if (a.size() < b.size()) return Ord::LT;
  if (a.size() > b.size()) return Ord::GT;
  return cmp_lex(a, b);
}

enum class ColOrder { Deglex, Rev };

// Deglex: shorter column first, then lex on the decreasing word.
// Rev: longer column first, then lex on the decreasing word.
inline Ord cmp_columns(Col u, Col v, ColOrder ord) {
  int lu = col_len(u), lv = col_len(v);
  if (ord == ColOrder::Deglex) {
    if (lu != lv) return lu < lv ? Ord::LT : Ord::GT;
  } else {
    if (lu != lv) return lu > lv ? Ord::LT : Ord::GT;
  }
  return cmp_lex(col_word(u), col_word(v));
}

// The well-order on column sequences certifying termination of the column
// rules: shorter sequence first; at equal length the first differing factor
// decides via the rev order on columns.
inline Ord cmp_ll(const std::vector<Col>& a, const std::vector<Col>& b) {
  if (a.size() < b.size()) return Ord::LT;
  if (a.size() > b.size()) return Ord::GT;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return cmp_columns(a[i], b[i], ColOrder::Rev);
  return Ord::EQ;
}

inline std::vector<Col> all_columns(int n, ColOrder ord = ColOrder::Deglex) {
  if (n < 1 || n > kMaxN) throw std::out_of_range("all_columns: n out of range");
  std::vector<Col> cols;
  cols.reserve((size_t{1} << n) - 1);
  for (Col c = 1; c < (Col{1} << n); ++c) cols.push_back(c);
  std::sort(cols.begin(), cols.end(),
            [ord](Col x, Col y) { return cmp_columns(x, y, ord) == Ord::LT; });
  return cols;
}

// Weak entrywise comparison on column masks: the i-th smallest letter of v
// is >= the i-th smallest letter of u for all i <= len(v). Requires
// len(u) >= len(v) to be meaningful as the tableau row condition.
inline bool cols_row_compatible(Col u, Col v) {
  if (col_len(u) < col_len(v)) return false;
  for (int m = 1; m <= 32; ++m) {
    Col mask = (m >= 32) ? ~Col{0} : ((Col{1} << m) - 1);
    if (std::popcount(v & mask) > std::popcount(u & mask)) return false;
    if ((u | v) >> m == 0) break;
  }
  return true;
}

// Semistandard tableau, stored column-major: columns[j] is the j-th column
// mask, read top-to-bottom as the increasing word of the mask.
struct Tableau {
  std::vector<Col> columns;

  bool empty() const { return columns.empty(); }
  int box_count() const {
    int s = 0;
    for (Col c : columns) s += col_len(c);
    return s;
  }
  int height() const { return columns.empty() ? 0 : col_len(columns.front()); }

  // Planar rows, top to bottom (longest first). Row r holds the (r+1)-th
  // smallest letter of every column of length > r.
  std::vector<Word> rows() const {
    std::vector<Word> rs(height());
    for (Col c : columns) {
      Word letters;  // ascending
      for (int i = col_min(c); i <= col_max(c); ++i)
        if (c & (Col{1} << (i - 1))) letters.push_back(i);
      for (size_t r = 0; r < letters.size(); ++r) rs[r].push_back(letters[r]);
    }
    return rs;
  }

  bool operator==(const Tableau& o) const { return columns == o.columns; }
};

inline bool tableau_valid(const Tableau& t, int n) {
  for (Col c : t.columns)
    if (!col_valid(c, n)) return false;
  for (size_t j = 0; j + 1 < t.columns.size(); ++j)
    if (!cols_row_compatible(t.columns[j], t.columns[j + 1])) return false;
  return true;
}

inline Tableau tableau_from_rows(const std::vector<Word>& rows_top_down) {
  Tableau t;
  if (rows_top_down.empty()) return t;
  size_t width = 0;
  for (const Word& row : rows_top_down) width = std::max(width, row.size());
  t.columns.assign(width, 0);
  for (const Word& row : rows_top_down)
    for (size_t j = 0; j < row.size(); ++j)
      t.columns[j] |= Col{1} << (row[j] - 1);
  return t;
}

// Row reading: planar rows bottom-to-top, each left-to-right.
inline Word row_reading(const Tableau& t) {
  auto rs = t.rows();
  Word w;
  for (auto it = rs.rbegin(); it != rs.rend(); ++it)
    w.insert(w.end(), it->begin(), it->end());
  return w;
}

// C(T): columns left-to-right, each bottom-to-top (decreasing).
inline Word column_reading(const Tableau& t) {
  Word w;
  for (Col c : t.columns) {
    Word cw = col_word(c);
    w.insert(w.end(), cw.begin(), cw.end());
  }
  return w;
}

// J(T): columns right-to-left, each top-to-bottom (increasing).
inline Word japanese_reading(const Tableau& t) {
  Word w;
  for (auto it = t.columns.rbegin(); it != t.columns.rend(); ++it) {
    Word cw = col_word(*it);
    w.insert(w.end(), cw.rbegin(), cw.rend());
  }
  return w;
}

// Decompose w into maximal weakly non-decreasing runs u_1...u_k (the reading
// rows, bottom row first) and accept iff the domination chain
// u_1 |> u_2 |> ... |> u_k holds. The planar tableau has rows u_k,...,u_1
// top to bottom.
inline std::optional<Tableau> tableau_check(const Word& w) {
  std::vector<Word> runs;
  for (Letter x : w) {
    if (runs.empty() || runs.back().back() > x) runs.push_back({x});
    else runs.back().push_back(x);
  }
  for (size_t i = 0; i + 1 < runs.size(); ++i) {
    const Word& a = runs[i];
    const Word& b = runs[i + 1];
    if (a.size() > b.size()) return std::nullopt;
    for (size_t j = 0; j < a.size(); ++j)
      if (a[j] <= b[j]) return std::nullopt;
  }
  std::vector<Word> rows_top_down(runs.rbegin(), runs.rend());
  return tableau_from_rows(rows_top_down);
}

// ---- serialization ----

inline std::string word_to_string(const Word& w, int n = 9) {
  std::ostringstream os;
  if (n <= 9) {
    for (Letter x : w) os << x;
  } else {
    for (size_t i = 0; i < w.size(); ++i) {
      if (i) os << ',';
      os << w[i];
    }
  }
  return os.str();
}

inline Word parse_word(const std::string& s, int n) {
  Word w;
  if (s.find(',') != std::string::npos || n > 9) {
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      if (tok.empty()) continue;
      w.push_back(std::stoi(tok));
    }
  } else {
    for (char ch : s) {
      if (ch < '1' || ch > '9') throw std::invalid_argument("bad letter in word");
      w.push_back(ch - '0');
    }
  }
  for (Letter x : w)
    if (x < 1 || x > n) throw std::invalid_argument("letter out of range");
  return w;
}

inline std::string col_to_string(Col c, int n = 9) {
  return word_to_string(col_word(c), n);
}

inline std::string tableau_json(const Tableau& t) {
  std::ostringstream os;
  os << "{\"rows\": [";
  auto rs = t.rows();
  for (size_t r = 0; r < rs.size(); ++r) {
    if (r) os << ", ";
    os << "[";
    for (size_t j = 0; j < rs[r].size(); ++j) {
      if (j) os << ", ";
      os << rs[r][j];
    }
    os << "]";
  }
  os << "]}";
  return os.str();
}

}  // namespace plactic
