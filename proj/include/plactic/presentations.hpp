#pragma once

// Pair types, the alpha rules on column pairs, the presentation presets
// (Knuth2, KnuthCC2, CPC2, PreColo2, Colo2), and the closed-form counts.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "plactic/core.hpp"
#include "plactic/schensted.hpp"

namespace plactic {

// Generators are columns; a letter generator is the singleton column mask.
using Gen = Col;
using GenWord = std::vector<Gen>;

inline Gen letter_gen(Letter x) { return Gen{1} << (x - 1); }

inline Word flatten(const GenWord& w) {
  Word out;
  for (Gen g : w) {
    Word cw = col_word(g);
    out.insert(out.end(), cw.begin(), cw.end());
  }
  return out;
}

struct GenWordHash {
  size_t operator()(const GenWord& w) const {
    size_t h = 1469598103934665603ull;
    for (Gen g : w) {
      h ^= g;
      h *= 1099511628211ull;
    }
    return h;
  }
};

enum class PairType { Tableau1, OneColumn01, TwoColumns02 };

// Type 1 iff the juxtaposed columns already form a tableau; otherwise the
// tableau P(uv) has one column (01) or two columns (02).
inline PairType pair_type(Col u, Col v) {
  if (cols_row_compatible(u, v)) return PairType::Tableau1;
  if (col_min(u) > col_max(v)) return PairType::OneColumn01;
  return PairType::TwoColumns02;
}

// Target of the rule c_u c_v => c_w [c_w'] for a type-0 pair.
inline std::pair<Col, std::optional<Col>> alpha_target(Col u, Col v) {
  PairType t = pair_type(u, v);
  if (t == PairType::Tableau1)
    throw std::domain_error("alpha_target: pair is already a tableau, no rule");
  if (t == PairType::OneColumn01) return {u | v, std::nullopt};
  Word uv = col_word(u);
  Word vw = col_word(v);
  uv.insert(uv.end(), vw.begin(), vw.end());
  Tableau p = p_tableau(uv);
  return {p.columns[0], p.columns[1]};
}

enum class Preset { Knuth2, KnuthCC2, CPC2, PreColo2, Colo2 };

inline std::string preset_name(Preset p) {
  switch (p) {
    case Preset::Knuth2: return "knuth2";
    case Preset::KnuthCC2: return "knuthcc2";
    case Preset::CPC2: return "cpc2";
    case Preset::PreColo2: return "precolo2";
    case Preset::Colo2: return "colo2";
  }
  return "?";
}

enum class RuleKind { Eta, Eps, Gamma, AlphaExt, AlphaPC, Alpha, Added };

struct Rule2 {
  std::string name;
  GenWord source;
  GenWord target;
  RuleKind kind = RuleKind::Alpha;
  // parameters for classification; meaning depends on kind
  int x = 0, y = 0, z = 0;
  Col u = 0, v = 0;
};

// Prefix tree over rule sources, so a rewriting scan can match every rule
// that fires at a position in one left-to-right walk, without building or
// hashing substrings.  Children are kept in tiny unsorted vectors; fan-out is
// bounded by the generator count.
struct SourceTrie {
  struct Node {
    std::vector<std::pair<Gen, int>> next;
    std::vector<int> rules;  // rules whose full source ends at this node
  };
  std::vector<Node> nodes = std::vector<Node>(1);
  size_t max_len = 0;

  int child(int node, Gen g) const {
    for (const auto& [gen, to] : nodes[node].next)
      if (gen == g) return to;
    return -1;
  }
  void insert(const GenWord& src, int rule) {
    int cur = 0;
    for (Gen g : src) {
      int to = child(cur, g);
      if (to < 0) {
        to = static_cast<int>(nodes.size());
        nodes[cur].next.emplace_back(g, to);
        nodes.emplace_back();
      }
      cur = to;
    }
    nodes[cur].rules.push_back(rule);
    max_len = std::max(max_len, src.size());
  }
  void clear() {
    nodes.assign(1, Node{});
    max_len = 0;
  }
};

struct Presentation2 {
  int n = 0;
  Preset preset = Preset::Knuth2;
  std::vector<Gen> generators;
  std::vector<Rule2> rules;
  std::unordered_map<GenWord, std::vector<int>, GenWordHash> by_source;
  std::set<size_t> source_lengths;
  SourceTrie trie;

  void index_rule(int i) {
    by_source[rules[i].source].push_back(i);
    source_lengths.insert(rules[i].source.size());
    trie.insert(rules[i].source, i);
  }
  void reindex() {
    by_source.clear();
    source_lengths.clear();
    trie.clear();
    for (int i = 0; i < static_cast<int>(rules.size()); ++i) index_rule(i);
  }
};

namespace detail {

inline std::string rule_label(const std::string& head, std::initializer_list<Word> args, int n) {
  std::string s = head + "(";
  bool first = true;
  for (const Word& a : args) {
    if (!first) s += ",";
    first = false;
    s += word_to_string(a, n);
  }
  return s + ")";
}

inline void add_knuth_rules(Presentation2& p, int n) {
  // eta: zxy => xzy for x <= y < z
  for (int x = 1; x <= n; ++x)
    for (int y = x; y <= n; ++y)
      for (int z = y + 1; z <= n; ++z) {
        Rule2 r;
        r.name = rule_label("eta", {{x}, {y}, {z}}, n);
        r.source = {letter_gen(z), letter_gen(x), letter_gen(y)};
        r.target = {letter_gen(x), letter_gen(z), letter_gen(y)};
        r.kind = RuleKind::Eta;
        r.x = x; r.y = y; r.z = z;
        p.rules.push_back(std::move(r));
      }
  // eps: yzx => yxz for x < y <= z
  for (int x = 1; x <= n; ++x)
    for (int y = x + 1; y <= n; ++y)
      for (int z = y; z <= n; ++z) {
        Rule2 r;
        r.name = rule_label("eps", {{x}, {y}, {z}}, n);
        r.source = {letter_gen(y), letter_gen(z), letter_gen(x)};
        r.target = {letter_gen(y), letter_gen(x), letter_gen(z)};
        r.kind = RuleKind::Eps;
        r.x = x; r.y = y; r.z = z;
        p.rules.push_back(std::move(r));
      }
}

inline void add_gamma_rules(Presentation2& p, int n) {
  for (Col c : all_columns(n)) {
    if (col_len(c) < 2) continue;
    Rule2 r;
    r.name = rule_label("gamma", {col_word(c)}, n);
    for (Letter x : col_word(c)) r.source.push_back(letter_gen(x));
    r.target = {c};
    r.kind = RuleKind::Gamma;
    r.u = c;
    p.rules.push_back(std::move(r));
  }
}

// The two-letter alpha' rules obtained from the Knuth relations:
//   c_x c_{zy} => c_{zx} c_y  for x <= y < z
//   c_y c_{zx} => c_{yx} c_z  for x < y <= z
inline void add_pc_rules(Presentation2& p, int n) {
  for (int x = 1; x <= n; ++x)
    for (int y = x; y <= n; ++y)
      for (int z = y + 1; z <= n; ++z) {
        Rule2 r;
        Col zy = letter_gen(z) | letter_gen(y);
        r.name = rule_label("alphap", {{x}, col_word(zy)}, n);
        r.source = {letter_gen(x), zy};
        r.target = {letter_gen(z) | letter_gen(x), letter_gen(y)};
        r.kind = RuleKind::AlphaPC;
        r.x = x; r.y = y; r.z = z;
        r.u = letter_gen(x); r.v = zy;
        p.rules.push_back(std::move(r));
      }
  for (int x = 1; x <= n; ++x)
    for (int y = x + 1; y <= n; ++y)
      for (int z = y; z <= n; ++z) {
        Rule2 r;
        Col zx = letter_gen(z) | letter_gen(x);
        r.name = rule_label("alphap", {{y}, col_word(zx)}, n);
        r.source = {letter_gen(y), zx};
        r.target = {letter_gen(y) | letter_gen(x), letter_gen(z)};
        r.kind = RuleKind::AlphaPC;
        r.x = x; r.y = y; r.z = z;
        r.u = letter_gen(y); r.v = zx;
        p.rules.push_back(std::move(r));
      }
}

// Column-extension rules c_x c_u => c_{xu} for every column xu with x its
// greatest letter.
inline void add_ext_rules(Presentation2& p, int n) {
  for (Col c : all_columns(n)) {
    if (col_len(c) < 2) continue;
    Col x = Col{1} << (col_max(c) - 1);
    Col rest = c & ~x;
    Rule2 r;
    r.name = rule_label("alphap", {{col_max(c)}, col_word(rest)}, n);
    r.source = {x, rest};
    r.target = {c};
    r.kind = RuleKind::AlphaExt;
    r.x = col_max(c);
    r.u = x; r.v = rest;
    p.rules.push_back(std::move(r));
  }
}

inline void add_alpha_rules(Presentation2& p, int n) {
  auto cols = all_columns(n);
  for (Col u : cols)
    for (Col v : cols) {
      if (pair_type(u, v) == PairType::Tableau1) continue;
      Rule2 r;
      r.name = rule_label("alpha", {col_word(u), col_word(v)}, n);
      r.source = {u, v};
      auto [w, wp] = alpha_target(u, v);
      r.target = {w};
      if (wp) r.target.push_back(*wp);
      r.kind = RuleKind::Alpha;
      r.u = u; r.v = v;
      p.rules.push_back(std::move(r));
    }
}

}  // namespace detail

inline Presentation2 build(Preset preset, int n) {
  if (n < 1 || n > kMaxN) throw std::out_of_range("build: n out of range");
  if (preset == Preset::Colo2 && n > 10)
    throw std::length_error("build: Colo2 materialization capped at n=10; use colo2_stream");
  Presentation2 p;
  p.n = n;
  p.preset = preset;
  switch (preset) {
    case Preset::Knuth2:
      for (int i = 1; i <= n; ++i) p.generators.push_back(letter_gen(i));
      detail::add_knuth_rules(p, n);
      break;
    case Preset::KnuthCC2:
      p.generators = all_columns(n);
      detail::add_gamma_rules(p, n);
      detail::add_knuth_rules(p, n);
      break;
    case Preset::CPC2:
      p.generators = all_columns(n);
      detail::add_gamma_rules(p, n);
      detail::add_pc_rules(p, n);
      break;
    case Preset::PreColo2:
      p.generators = all_columns(n);
      detail::add_pc_rules(p, n);
      detail::add_ext_rules(p, n);
      break;
    case Preset::Colo2:
      p.generators = all_columns(n);
      detail::add_alpha_rules(p, n);
      break;
  }
  p.reindex();
  return p;
}

// Visit every Colo2(n) rule without materializing the presentation.
inline void colo2_stream(int n, const std::function<void(Col, Col)>& fn) {
  if (n < 1 || n > kMaxN) throw std::out_of_range("colo2_stream: n out of range");
  for (Col u = 1; u < (Col{1} << n); ++u)
    for (Col v = 1; v < (Col{1} << n); ++v)
      if (pair_type(u, v) != PairType::Tableau1) fn(u, v);
}

// ---- closed-form counts ----

// |S_{n,q}|: tableaux over [n] with at most q columns (empty one included),
// as the Gordon product prod_{1<=i<=j<=n} (q+i+j-1)/(i+j-1), evaluated
// exactly via prime-exponent bookkeeping.
inline std::uint64_t gordon_count(int n, int q) {
  if (n < 1 || q < 0) throw std::out_of_range("gordon_count: bad arguments");
  int maxterm = q + 2 * n;
  std::vector<int> exp(maxterm + 1, 0);  // exponent of each integer's prime factorization, indexed by prime
  auto factor = [&](int m, int sign) {
    for (int d = 2; d * d <= m; ++d)
      while (m % d == 0) {
        exp[d] += sign;
        m /= d;
      }
    if (m > 1) exp[m] += sign;
  };
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      factor(q + i + j - 1, +1);
      factor(i + j - 1, -1);
    }
  unsigned __int128 acc = 1;
  const unsigned __int128 lim = ~std::uint64_t{0};
  for (int d = 2; d <= maxterm; ++d) {
    if (exp[d] < 0) throw std::logic_error("gordon_count: non-integral product");
    for (int k = 0; k < exp[d]; ++k) {
      acc *= static_cast<unsigned>(d);
      if (acc > lim) throw std::overflow_error("gordon_count: result exceeds 64 bits");
    }
  }
  return static_cast<std::uint64_t>(acc);
}

// kappa(n,1) = 2^n - 1 generators; kappa(n,2) rules of Colo2(n).
inline std::uint64_t kappa(int n, int m) {
  if (n < 1 || n > kMaxN) throw std::out_of_range("kappa: n out of range");
  std::uint64_t k1 = (std::uint64_t{1} << n) - 1;
  if (m == 1) return k1;
  if (m != 2) throw std::out_of_range("kappa: m must be 1 or 2");
  std::uint64_t s1 = gordon_count(n, 1);
  std::uint64_t s2 = gordon_count(n, 2);
  return k1 * k1 - (s2 - s1);
}

}  // namespace plactic
