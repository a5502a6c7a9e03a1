#pragma once

// Hexagonal 3-cells over the column rules: construction, classification,
// counting, restriction to single-letter left factors, elimination of the
// general alpha rules in favour of the pre-column rules, and the final
// expansion of boundaries down to Knuth rules on letters.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "plactic/core.hpp"
#include "plactic/engine.hpp"
#include "plactic/presentations.hpp"
#include "plactic/schensted.hpp"

namespace plactic {

enum class CellFamily { A, B, C, Cprime, D, D1, D2, D3, D4 };

inline std::string family_name(CellFamily f) {
  switch (f) {
    case CellFamily::A: return "A";
    case CellFamily::B: return "B";
    case CellFamily::C: return "C";
    case CellFamily::Cprime: return "Cprime";
    case CellFamily::D: return "D";
    case CellFamily::D1: return "D1";
    case CellFamily::D2: return "D2";
    case CellFamily::D3: return "D3";
    case CellFamily::D4: return "D4";
  }
  return "?";
}

inline bool is_d_family(CellFamily f) {
  return f == CellFamily::D || f == CellFamily::D1 || f == CellFamily::D2 ||
         f == CellFamily::D3 || f == CellFamily::D4;
}

struct Cell3 {
  std::string name;
  CellFamily family = CellFamily::A;
  Col u = 0, v = 0, t = 0;
  GenWord source;
  Derivation left;
  Derivation right;
  // named display columns of the hexagon diagram, present when defined
  std::vector<std::pair<std::string, Col>> corners;
};

// ---- presentation-free column rewriting (one alpha step) ----

struct AlphaStep {
  int pos = 0;
  Col u = 0, v = 0;
};

inline void apply_alpha(GenWord& w, const AlphaStep& s) {
  auto [a, b] = alpha_target(s.u, s.v);
  GenWord next(w.begin(), w.begin() + s.pos);
  next.push_back(a);
  if (b) next.push_back(*b);
  next.insert(next.end(), w.begin() + s.pos + 2, w.end());
  w = std::move(next);
}

inline std::optional<AlphaStep> leftmost_alpha(const GenWord& w) {
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (pair_type(w[i], w[i + 1]) != PairType::Tableau1)
      return AlphaStep{static_cast<int>(i), w[i], w[i + 1]};
  return std::nullopt;
}

inline std::vector<AlphaStep> leftmost_alpha_run(GenWord& w) {
  std::vector<AlphaStep> out;
  while (auto s = leftmost_alpha(w)) {
    out.push_back(*s);
    apply_alpha(w, *s);
  }
  return out;
}

// ---- hexagon construction ----

namespace detail {

inline int alpha_rule_id(const Presentation2& P, Col u, Col v) {
  auto it = P.by_source.find(GenWord{u, v});
  if (it == P.by_source.end() || it->second.size() != 1)
    throw std::logic_error("alpha_rule_id: missing column rule");
  return it->second.front();
}

inline Derivation to_derivation(const Presentation2& P, const GenWord& start,
                                const std::vector<AlphaStep>& steps) {
  Derivation d;
  d.start = start;
  for (const AlphaStep& s : steps)
    d.steps.push_back({alpha_rule_id(P, s.u, s.v), s.pos, true});
  return d;
}

}  // namespace detail

// Both confluent closures of the branching (alpha_{u,v} t, u alpha_{v,t}),
// classified by the pair types and the closure shapes.
inline Cell3 hexagon(const Presentation2& colo2P, Col u, Col v, Col t) {
  PairType uv = pair_type(u, v);
  PairType vt = pair_type(v, t);
  if (uv == PairType::Tableau1 || vt == PairType::Tableau1)
    throw std::domain_error("hexagon: pair already in tableau form, not a branching");

  GenWord start{u, v, t};
  GenWord lw = start, rw = start;
  std::vector<AlphaStep> ls{{0, u, v}};
  apply_alpha(lw, ls.front());
  for (AlphaStep s : leftmost_alpha_run(lw)) ls.push_back(s);
  std::vector<AlphaStep> rs{{1, v, t}};
  apply_alpha(rw, rs.front());
  for (AlphaStep s : leftmost_alpha_run(rw)) rs.push_back(s);

  if (lw != rw) throw std::logic_error("hexagon: closures do not meet");
  if (ls.size() > 3 || rs.size() > 3)
    throw std::logic_error("hexagon: closure exceeds three steps");

  Cell3 c;
  c.u = u;
  c.v = v;
  c.t = t;
  c.name = "X(" + col_to_string(u) + "," + col_to_string(v) + "," + col_to_string(t) + ")";
  c.source = start;
  c.left = detail::to_derivation(colo2P, start, ls);
  c.right = detail::to_derivation(colo2P, start, rs);

  if (uv == PairType::OneColumn01 && vt == PairType::OneColumn01)
    c.family = CellFamily::A;
  else if (uv == PairType::TwoColumns02 && vt == PairType::OneColumn01)
    c.family = CellFamily::B;
  else if (uv == PairType::OneColumn01 && vt == PairType::TwoColumns02)
    c.family = ls.size() == 1 ? CellFamily::Cprime : CellFamily::C;
  else {
    size_t l = ls.size(), r = rs.size();
    if (l == 3 && r == 3) c.family = CellFamily::D;
    else if (l == 2 && r == 3) c.family = CellFamily::D1;
    else if (l == 3 && r == 2) c.family = CellFamily::D2;
    else if (l == 2 && r == 2) c.family = CellFamily::D3;
    else c.family = CellFamily::D4;
  }

  auto put = [&](const char* k, Col col) { c.corners.emplace_back(k, col); };
  {
    auto [a, b] = alpha_target(u, v);
    put("e", a);
    if (b) put("e'", *b);
  }
  {
    auto [a, b] = alpha_target(v, t);
    put("w", a);
    if (b) put("w'", *b);
  }
  if (ls.size() >= 2) {
    auto [a, b] = alpha_target(ls[1].u, ls[1].v);
    put("b", a);
    if (b) put("b'", *b);
  }
  if (rs.size() >= 2) {
    auto [a, b] = alpha_target(rs[1].u, rs[1].v);
    put("a", a);
    if (b) put("a'", *b);
  }
  if (lw.size() == 3) put("d", lw[1]);
  return c;
}

// ---- counting ----

struct TypeTally {
  int n = 0;
  // indexed by column mask; middle-column statistics of the triple counts
  std::vector<std::uint32_t> in0, out0, inL0, inL02, out02;
  std::uint64_t type0_pairs = 0;
  std::uint64_t cprime_pairs = 0;
};

inline TypeTally type_tally(int n, int threads = 1) {
  if (n < 1 || n > 10) throw std::out_of_range("type_tally: 1 <= n <= 10");
  if (threads < 1) threads = 1;
  Col top = Col{1} << n;
  TypeTally total;
  total.n = n;
  total.in0.assign(top, 0);
  total.out0.assign(top, 0);
  total.inL0.assign(top, 0);
  total.inL02.assign(top, 0);
  total.out02.assign(top, 0);

  auto scan = [&](Col lo, Col hi, TypeTally& t) {
    for (Col u = lo; u < hi; ++u)
      for (Col v = 1; v < top; ++v) {
        PairType pt = pair_type(u, v);
        if (pt == PairType::Tableau1) {
          if (col_len(u) >= 2) {
            Col rest = u & ~(Col{1} << (col_max(u) - 1));
            if (pair_type(rest, v) == PairType::TwoColumns02) ++t.cprime_pairs;
          }
          continue;
        }
        ++t.type0_pairs;
        ++t.out0[u];
        ++t.in0[v];
        if (col_len(u) == 1) {
          ++t.inL0[v];
          if (pt == PairType::TwoColumns02) ++t.inL02[v];
        }
        if (pt == PairType::TwoColumns02) ++t.out02[u];
      }
  };

  if (threads == 1) {
    scan(1, top, total);
    return total;
  }
  std::vector<TypeTally> parts(threads);
  std::vector<std::thread> pool;
  Col span = (top - 1 + threads - 1) / threads;
  for (int k = 0; k < threads; ++k) {
    TypeTally& part = parts[k];
    part.in0.assign(top, 0);
    part.out0.assign(top, 0);
    part.inL0.assign(top, 0);
    part.inL02.assign(top, 0);
    part.out02.assign(top, 0);
    Col lo = 1 + k * span;
    Col hi = std::min<Col>(top, lo + span);
    if (lo >= hi) continue;
    pool.emplace_back([&scan, lo, hi, &part] { scan(lo, hi, part); });
  }
  for (auto& th : pool) th.join();
  for (const TypeTally& part : parts) {
    total.type0_pairs += part.type0_pairs;
    total.cprime_pairs += part.cprime_pairs;
    for (Col c = 0; c < top; ++c) {
      total.in0[c] += part.in0[c];
      total.out0[c] += part.out0[c];
      total.inL0[c] += part.inL0[c];
      total.inL02[c] += part.inL02[c];
      total.out02[c] += part.out02[c];
    }
  }
  return total;
}

enum class Restrict { All, ULen1 };

inline std::uint64_t count_cells3(const TypeTally& t, Restrict r) {
  std::uint64_t total = 0;
  const auto& in = r == Restrict::All ? t.in0 : t.inL0;
  for (size_t v = 1; v < t.in0.size(); ++v)
    total += std::uint64_t{in[v]} * t.out0[v];
  return total;
}

inline std::uint64_t count_cells3(int n, Restrict r, int threads = 1) {
  return count_cells3(type_tally(n, threads), r);
}

// Cells surviving the elimination of the A, B and C families: the remaining
// single-letter Cprime cells plus the single-letter D-family cells.
inline std::uint64_t count_reduced_cells3(const TypeTally& t) {
  std::uint64_t d = 0;
  for (size_t v = 1; v < t.inL02.size(); ++v)
    d += std::uint64_t{t.inL02[v]} * t.out02[v];
  return t.cprime_pairs + d;
}

inline std::uint64_t count_knuth2_rules(int n) {
  std::uint64_t c = 0;
  for (int x = 1; x <= n; ++x)
    for (int y = x; y <= n; ++y)
      for (int z = y + 1; z <= n; ++z) ++c;  // eta over x <= y < z
  for (int x = 1; x <= n; ++x)
    for (int y = x + 1; y <= n; ++y)
      for (int z = y; z <= n; ++z) ++c;  // eps over x < y <= z
  return c;
}

struct CellCountReport {
  int n = 0;
  std::uint64_t knuth1 = 0, colo1 = 0, knuth2 = 0, colo2 = 0;
  std::uint64_t knuth3 = 0, bar_colo3 = 0, colo3 = 0;
  std::optional<std::uint64_t> kb2, kb3;  // absent means infinite (n >= 4)
};

inline CellCountReport cell_counts(int n, bool include_kb = false, int threads = 1) {
  if (n < 1 || n > 10) throw std::out_of_range("cell_counts: 1 <= n <= 10");
  CellCountReport r;
  r.n = n;
  r.knuth1 = static_cast<std::uint64_t>(n);
  r.colo1 = (std::uint64_t{1} << n) - 1;
  r.knuth2 = count_knuth2_rules(n);
  TypeTally t = type_tally(n, threads);
  r.colo2 = t.type0_pairs;
  r.colo3 = count_cells3(t, Restrict::All);
  r.bar_colo3 = count_cells3(t, Restrict::ULen1);
  r.knuth3 = count_reduced_cells3(t);
  if (include_kb && n <= 3) {
    CompletionResult kb = complete(build(Preset::Knuth2, n));
    if (!kb.completed) throw std::logic_error("cell_counts: completion should finish");
    r.kb2 = kb.system.rules.size();
    r.kb3 = kb.cells.size();
  }
  return r;
}

// ---- materialized enumeration ----

inline std::vector<Cell3> enumerate_cells3(const Presentation2& colo2P, Restrict restrict) {
  int n = colo2P.n;
  if (n > 6) throw std::length_error("enumerate_cells3: materialization capped at n=6");
  Col top = Col{1} << n;
  std::vector<std::vector<Col>> outs(top);
  for (Col v = 1; v < top; ++v)
    for (Col t = 1; t < top; ++t)
      if (pair_type(v, t) != PairType::Tableau1) outs[v].push_back(t);
  std::vector<Cell3> cells;
  for (Col u = 1; u < top; ++u) {
    if (restrict == Restrict::ULen1 && col_len(u) != 1) continue;
    for (Col v = 1; v < top; ++v) {
      if (pair_type(u, v) == PairType::Tableau1) continue;
      for (Col t : outs[v]) cells.push_back(hexagon(colo2P, u, v, t));
    }
  }
  return cells;
}

// ---- elimination of the alpha rules: boundaries over the pre-column rules ----

namespace detail {

inline int unique_rule(const Presentation2& P, const GenWord& src, const char* what) {
  auto it = P.by_source.find(src);
  if (it == P.by_source.end() || it->second.size() != 1)
    throw std::logic_error(std::string("missing rule: ") + what);
  return it->second.front();
}

struct PreExpander {
  const Presentation2& pre;
  std::vector<SignedStep>* out;
  size_t cap = 100000;

  void emit(GenWord& w, int rule, int pos, bool fwd) {
    if (out->size() >= cap) throw ResourceError("pre-column expansion too large");
    SignedStep s{rule, pos, fwd};
    if (!apply_signed(pre, w, s)) throw std::logic_error("pre-column expansion misstep");
    out->push_back(s);
  }

  // Rewrites the single column-pair step alpha_{w[p], w[p+1]} as a zig-zag of
  // pre-column steps, advancing w to the step's target.
  void expand(GenWord& w, int p, int depth) {
    if (depth > 64) throw std::logic_error("pre-column expansion recursion too deep");
    Col u = w[p], v = w[p + 1];
    PairType pt = pair_type(u, v);
    if (pt == PairType::Tableau1) throw std::logic_error("expand: not a rewrite step");

    if (col_len(u) == 1) {
      if (pt == PairType::OneColumn01) {
        emit(w, unique_rule(pre, {u, v}, "column extension"), p, true);
        return;
      }
      if (col_len(v) == 2) {
        emit(w, unique_rule(pre, {u, v}, "two-letter rule"), p, true);
        return;
      }
      // peel the least letter off v, then close the (u, v-rest, s) triangle
      Col s = v & (~v + 1);
      Col v1 = v & ~s;
      GenWord wpre(w.begin(), w.begin() + p + 1);
      wpre.push_back(v1);
      wpre.push_back(s);
      wpre.insert(wpre.end(), w.begin() + p + 2, w.end());
      invert_expansion(w, wpre, p + 1, depth);
      GenWord triple{u, v1, s};
      std::vector<AlphaStep> closure{{0, u, v1}};
      apply_alpha(triple, closure.front());
      for (AlphaStep a : leftmost_alpha_run(triple)) closure.push_back(a);
      for (const AlphaStep& a : closure) expand(w, p + a.pos, depth + 1);
      return;
    }

    // peel the greatest letter off u, then close the (x, u-rest, v) triangle
    Col x = Col{1} << (col_max(u) - 1);
    Col u1 = u & ~x;
    GenWord wpre(w.begin(), w.begin() + p);
    wpre.push_back(x);
    wpre.push_back(u1);
    wpre.insert(wpre.end(), w.begin() + p + 1, w.end());
    invert_expansion(w, wpre, p, depth);
    GenWord triple{x, u1, v};
    std::vector<AlphaStep> closure{{1, u1, v}};
    apply_alpha(triple, closure.front());
    for (AlphaStep a : leftmost_alpha_run(triple)) closure.push_back(a);
    for (const AlphaStep& a : closure) expand(w, p + a.pos, depth + 1);
  }

  // Appends the inverse of the expansion of the step alpha_{wpre[p], wpre[p+1]}
  // (which must rewrite wpre into w) and rewinds w to wpre.
  void invert_expansion(GenWord& w, const GenWord& wpre, int p, int depth) {
    std::vector<SignedStep> sub;
    std::vector<SignedStep>* saved = out;
    out = &sub;
    GenWord tmp = wpre;
    expand(tmp, p, depth + 1);
    out = saved;
    if (tmp != w) throw std::logic_error("expand: inverse leg mismatch");
    if (out->size() + sub.size() > cap) throw ResourceError("pre-column expansion too large");
    for (auto it = sub.rbegin(); it != sub.rend(); ++it)
      out->push_back({it->rule, it->pos, !it->fwd});
    w = wpre;
  }
};

}  // namespace detail

// Expands one column-pair rewrite step at position pos of w into pre-column
// steps; returns the steps and advances w to the step's target.
inline std::vector<SignedStep> expand_alpha(const Presentation2& preP, GenWord& w, int pos) {
  std::vector<SignedStep> steps;
  detail::PreExpander ex{preP, &steps};
  ex.expand(w, pos, 0);
  return steps;
}

inline void cancel_adjacent(std::vector<SignedStep>& steps) {
  std::vector<SignedStep> stack;
  for (const SignedStep& s : steps) {
    if (!stack.empty() && stack.back().rule == s.rule && stack.back().pos == s.pos &&
        stack.back().fwd != s.fwd)
      stack.pop_back();
    else
      stack.push_back(s);
  }
  steps = std::move(stack);
}

struct CellSet {
  Presentation2 system;
  std::vector<Cell3> cells;
};

// The coherent cell family over the pre-column rules: single-letter Cprime
// and D cells, boundaries expanded from column steps to pre-column steps.
inline CellSet precolo3_cells(int n) {
  if (n < 1 || n > 7) throw std::out_of_range("precolo3_cells: 1 <= n <= 7");
  Presentation2 colo2P = build(Preset::Colo2, n);
  CellSet out;
  out.system = build(Preset::PreColo2, n);

  Col top = Col{1} << n;
  for (Col u = 1; u < top; ++u) {
    if (col_len(u) != 1) continue;
    for (Col v = 1; v < top; ++v) {
      if (pair_type(u, v) == PairType::Tableau1) continue;
      for (Col t = 1; t < top; ++t) {
        if (pair_type(v, t) == PairType::Tableau1) continue;
        Cell3 hex = hexagon(colo2P, u, v, t);
        if (hex.family != CellFamily::Cprime && !is_d_family(hex.family)) continue;
        Cell3 c = hex;
        c.left.steps.clear();
        c.right.steps.clear();
        GenWord w = hex.source;
        for (const SignedStep& s : hex.left.steps)
          for (SignedStep e : expand_alpha(out.system, w, s.pos)) c.left.steps.push_back(e);
        w = hex.source;
        for (const SignedStep& s : hex.right.steps)
          for (SignedStep e : expand_alpha(out.system, w, s.pos)) c.right.steps.push_back(e);
        cancel_adjacent(c.left.steps);
        cancel_adjacent(c.right.steps);
        out.cells.push_back(std::move(c));
      }
    }
  }
  return out;
}

// ---- boundaries over the Knuth rules on letters ----

namespace detail {

struct KnuthMaps {
  Presentation2 cc;      // columns with gamma + letter rules
  Presentation2 letters; // letter rules only
  std::map<Col, int> gamma;
  std::map<std::tuple<int, int, int, bool>, int> cc_knuth;      // (x,y,z,is_eta)
  std::map<std::tuple<int, int, int, bool>, int> letter_knuth;

  explicit KnuthMaps(int n)
      : cc(build(Preset::KnuthCC2, n)), letters(build(Preset::Knuth2, n)) {
    for (int i = 0; i < static_cast<int>(cc.rules.size()); ++i) {
      const Rule2& r = cc.rules[i];
      if (r.kind == RuleKind::Gamma) gamma[r.u] = i;
      else cc_knuth[{r.x, r.y, r.z, r.kind == RuleKind::Eta}] = i;
    }
    for (int i = 0; i < static_cast<int>(letters.rules.size()); ++i) {
      const Rule2& r = letters.rules[i];
      letter_knuth[{r.x, r.y, r.z, r.kind == RuleKind::Eta}] = i;
    }
  }
};

// Fixed replacement of one pre-column step by gamma / letter-rule steps.
inline std::vector<SignedStep> cc_replacement(const KnuthMaps& m, const Rule2& r, int q) {
  std::vector<SignedStep> out;
  auto gamma_of = [&](Col c) {
    auto it = m.gamma.find(c);
    if (it == m.gamma.end()) throw std::logic_error("cc_replacement: missing gamma");
    return it->second;
  };
  if (r.kind == RuleKind::AlphaExt) {
    Col xu = r.u | r.v;
    if (col_len(r.v) >= 2) out.push_back({gamma_of(r.v), q + 1, false});
    out.push_back({gamma_of(xu), q, true});
    return out;
  }
  if (r.kind != RuleKind::AlphaPC) throw std::logic_error("cc_replacement: unexpected rule");
  bool first_family = col_min(r.u) == r.x;  // source (x, zy); the other family starts with y
  if (first_family) {
    out.push_back({gamma_of(r.v), q + 1, false});
    out.push_back({m.cc_knuth.at({r.x, r.y, r.z, true}), q, false});
    out.push_back({gamma_of(letter_gen(r.z) | letter_gen(r.x)), q, true});
  } else {
    out.push_back({gamma_of(r.v), q + 1, false});
    out.push_back({m.cc_knuth.at({r.x, r.y, r.z, false}), q, true});
    out.push_back({gamma_of(letter_gen(r.y) | letter_gen(r.x)), q, true});
  }
  return out;
}

inline std::vector<SignedStep> stage12(const KnuthMaps& m, const Presentation2& preP,
                                       const GenWord& start,
                                       const std::vector<SignedStep>& steps) {
  std::vector<SignedStep> out;
  GenWord w = start;
  for (const SignedStep& s : steps) {
    std::vector<SignedStep> rep = cc_replacement(m, preP.rules[s.rule], s.pos);
    if (!s.fwd) {
      std::reverse(rep.begin(), rep.end());
      for (SignedStep& e : rep) e.fwd = !e.fwd;
    }
    for (const SignedStep& e : rep) {
      if (!apply_signed(m.cc, w, e)) throw std::logic_error("stage12: misstep");
      out.push_back(e);
    }
  }
  return out;
}

// Drops the gamma steps, re-addressing the letter-rule steps at letter
// positions; returns the steps over the letter presentation.
inline std::vector<SignedStep> stage3(const KnuthMaps& m, const GenWord& start,
                                      const std::vector<SignedStep>& steps,
                                      GenWord& letter_start) {
  letter_start.clear();
  for (Letter x : flatten(start)) letter_start.push_back(letter_gen(x));
  GenWord g = start;
  GenWord l = letter_start;
  std::vector<SignedStep> out;
  for (const SignedStep& s : steps) {
    const Rule2& r = m.cc.rules[s.rule];
    if (r.kind == RuleKind::Gamma) {
      if (!apply_signed(m.cc, g, s)) throw std::logic_error("stage3: misstep");
      continue;
    }
    int lp = 0;
    for (int k = 0; k < s.pos; ++k) lp += col_len(g[k]);
    SignedStep e{m.letter_knuth.at({r.x, r.y, r.z, r.kind == RuleKind::Eta}), lp, s.fwd};
    if (!apply_signed(m.letters, l, e)) throw std::logic_error("stage3: letter misstep");
    if (!apply_signed(m.cc, g, s)) throw std::logic_error("stage3: misstep");
    out.push_back(e);
  }
  return out;
}

// Cancels inverse pairs and floats leading inverse steps to the other side
// (as forward steps), shrinking the zig-zags and moving the common source.
inline void canonicalize_boundary(const Presentation2& P, GenWord& start,
                                  std::vector<SignedStep>& left,
                                  std::vector<SignedStep>& right) {
  for (;;) {
    cancel_adjacent(left);
    cancel_adjacent(right);
    if (!left.empty() && !left.front().fwd) {
      SignedStep s = left.front();
      left.erase(left.begin());
      if (!apply_signed(P, start, s)) throw std::logic_error("canonicalize: misstep");
      right.insert(right.begin(), {s.rule, s.pos, true});
      continue;
    }
    if (!right.empty() && !right.front().fwd) {
      SignedStep s = right.front();
      right.erase(right.begin());
      if (!apply_signed(P, start, s)) throw std::logic_error("canonicalize: misstep");
      left.insert(left.begin(), {s.rule, s.pos, true});
      continue;
    }
    return;
  }
}

}  // namespace detail

// The coherent cell family over the Knuth rules: every pre-column boundary
// pushed down to letters through the gamma elimination.
inline CellSet knuth3_cells(int n) {
  if (n < 1 || n > 5) throw std::out_of_range("knuth3_cells: 1 <= n <= 5");
  CellSet pre = precolo3_cells(n);
  detail::KnuthMaps maps(n);
  CellSet out;
  out.system = maps.letters;
  for (const Cell3& pc : pre.cells) {
    Cell3 c;
    c.name = pc.name;
    c.family = pc.family;
    c.u = pc.u;
    c.v = pc.v;
    c.t = pc.t;
    std::vector<SignedStep> lcc = detail::stage12(maps, pre.system, pc.source, pc.left.steps);
    std::vector<SignedStep> rcc = detail::stage12(maps, pre.system, pc.source, pc.right.steps);
    GenWord lstart, rstart;
    std::vector<SignedStep> l3 = detail::stage3(maps, pc.source, lcc, lstart);
    std::vector<SignedStep> r3 = detail::stage3(maps, pc.source, rcc, rstart);
    if (lstart != rstart) throw std::logic_error("knuth3_cells: source mismatch");
    detail::canonicalize_boundary(maps.letters, lstart, l3, r3);
    c.source = lstart;
    c.left.start = lstart;
    c.left.steps = std::move(l3);
    c.right.start = lstart;
    c.right.steps = std::move(r3);
    out.cells.push_back(std::move(c));
  }
  return out;
}

}  // namespace plactic
