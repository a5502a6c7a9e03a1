#pragma once

// Command line front end, kept in a header so the binary is a two-line main
// and the whole surface stays testable in-process.
//
// Exit codes:
//   0   success
//   1   a value was mathematically out of range (bad letter, bad triple, ...)
//   2   a resource cap stopped the computation before it finished
//   64  the command line itself could not be understood

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "plactic/coherence.hpp"
#include "plactic/core.hpp"
#include "plactic/crystals.hpp"
#include "plactic/engine.hpp"
#include "plactic/presentations.hpp"
#include "plactic/schensted.hpp"

namespace plactic::cli {

namespace detail {

using nlohmann::json;

inline const char* usage_text() {
  return
      "usage: plactic <command> [options]\n"
      "commands:\n"
      "  tableau    insert a word and print its tableau\n"
      "  rules      list the rewriting rules of a presentation\n"
      "  normalize  rewrite a word to its normal form\n"
      "  complete   run Knuth-Bendix completion on a presentation\n"
      "  counts     tabulate rule and cell counts per rank\n"
      "  hexagon    close one critical branching of the column system\n"
      "  verify     run the built-in consistency battery\n"
      "  crystal    apply crystal operators to a word\n"
      "  component  explore a connected crystal component\n"
      "options: [--n N] [--n-max N] [--preset P] [--word W] [--triple u,v,t]\n"
      "         [--strategy S] [--seed K] [--format text|json|csv|dot]\n"
      "         [--threads K] [--include-kb]\n";
}

inline Preset preset_from(const std::string& s) {
  if (s == "knuth2") return Preset::Knuth2;
  if (s == "knuthcc2") return Preset::KnuthCC2;
  if (s == "cpc2") return Preset::CPC2;
  if (s == "precolo2") return Preset::PreColo2;
  if (s == "colo2") return Preset::Colo2;
  throw std::invalid_argument("unknown preset: " + s);
}

inline const char* kind_name(RuleKind k) {
  switch (k) {
    case RuleKind::Eta: return "eta";
    case RuleKind::Eps: return "eps";
    case RuleKind::Gamma: return "gamma";
    case RuleKind::AlphaExt: return "alpha_ext";
    case RuleKind::AlphaPC: return "alpha_pc";
    case RuleKind::Alpha: return "alpha";
    case RuleKind::Added: return "added";
  }
  return "?";
}

inline std::string genword_str(const GenWord& w) {
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += col_to_string(w[i]);
  }
  return s;
}

inline json genword_json(const GenWord& w) {
  json a = json::array();
  for (Col c : w) a.push_back(col_to_string(c));
  return a;
}

inline std::string step_str(const Presentation2& P, const SignedStep& s) {
  return (s.fwd ? "" : "-") + P.rules[s.rule].name + "@" + std::to_string(s.pos);
}

inline std::string steps_str(const Presentation2& P,
                             const std::vector<SignedStep>& steps) {
  std::string s;
  for (size_t i = 0; i < steps.size(); ++i) {
    if (i) s += ' ';
    s += step_str(P, steps[i]);
  }
  return s;
}

inline json steps_json(const Presentation2& P,
                       const std::vector<SignedStep>& steps) {
  json a = json::array();
  for (const SignedStep& s : steps)
    a.push_back({{"rule", P.rules[s.rule].name},
                 {"pos", s.pos},
                 {"forward", s.fwd}});
  return a;
}

// Parses a word, padding the rank out of the word itself when none was given.
struct WordInput {
  Word word;
  int n;
};

inline WordInput read_word(const std::string& s, int n_opt) {
  int parse_n = n_opt > 0 ? n_opt : 9;
  Word w = parse_word(s, parse_n);
  int n = n_opt;
  if (n == 0) {
    n = 1;
    for (Letter x : w) n = std::max(n, static_cast<int>(x));
  }
  return {std::move(w), n};
}

inline GenWord letters_of(const Word& w) {
  GenWord g;
  g.reserve(w.size());
  for (Letter x : w) g.push_back(letter_gen(x));
  return g;
}

inline std::vector<Col> read_triple(const std::string& s, int n_opt) {
  std::vector<Col> cols;
  std::string part;
  std::stringstream ss(s);
  while (std::getline(ss, part, ',')) {
    if (part.empty()) throw std::invalid_argument("triple: empty component");
    Col c = 0;
    for (char ch : part) {
      if (ch < '1' || ch > '9')
        throw std::invalid_argument("triple: letters must be 1..9");
      Col bit = Col{1} << (ch - '1');
      if (c & bit) throw std::invalid_argument("triple: repeated letter");
      c |= bit;
    }
    cols.push_back(c);
  }
  if (cols.size() != 3)
    throw std::invalid_argument("triple: expected u,v,t");
  if (n_opt > 0)
    for (Col c : cols)
      if (!col_valid(c, n_opt))
        throw std::invalid_argument("triple: letter exceeds --n");
  return cols;
}

inline int default_threads() {
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

// ---- command bodies ----

struct Options {
  int n = 0;
  int n_max = 6;
  std::string preset;
  std::string word;
  std::string triple;
  std::string strategy = "leftmost";
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string format = "text";
  int threads = 0;
  bool include_kb = false;
  std::string op;
};

inline int cmd_tableau(const Options& o, std::ostream& out) {
  auto [w, n] = read_word(o.word, o.n);
  Tableau t = p_tableau(w);
  if (o.format == "json") {
    out << tableau_json(t) << "\n";
    return 0;
  }
  auto rows = t.rows();
  for (auto it = rows.rbegin(); it != rows.rend(); ++it)
    out << word_to_string(*it, n) << "\n";
  return 0;
}

inline int cmd_rules(const Options& o, std::ostream& out) {
  std::string preset = o.preset.empty() ? "colo2" : o.preset;
  int n = o.n > 0 ? o.n : 3;
  Presentation2 P = build(preset_from(preset), n);
  if (o.format == "json") {
    json rules = json::array();
    for (const Rule2& r : P.rules)
      rules.push_back({{"name", r.name},
                       {"kind", kind_name(r.kind)},
                       {"source", genword_json(r.source)},
                       {"target", genword_json(r.target)}});
    json j{{"preset", preset}, {"n", n}, {"rules", rules}};
    out << j.dump(2) << "\n";
    return 0;
  }
  for (const Rule2& r : P.rules)
    out << r.name << ": " << genword_str(r.source) << " => "
        << genword_str(r.target) << "\n";
  return 0;
}

inline int cmd_normalize(const Options& o, std::ostream& out) {
  auto [w, n] = read_word(o.word, o.n);
  std::string preset = o.preset.empty() ? "colo2" : o.preset;
  Presentation2 P = build(preset_from(preset), n);
  Strategy strat = Strategy::Leftmost;
  if (o.strategy == "rightmost") strat = Strategy::Rightmost;
  if (o.strategy == "random") strat = Strategy::Random;
  NormalizeResult r = normalize(P, letters_of(w), strat, o.seed);
  if (o.format == "json") {
    json j{{"nf", genword_json(r.nf)},
           {"steps", r.deriv.steps.size()},
           {"strategy", o.strategy}};
    out << j.dump(2) << "\n";
    return 0;
  }
  out << genword_str(r.nf) << "\n";
  return 0;
}

inline int cmd_complete(const Options& o, std::ostream& out) {
  std::string preset = o.preset.empty() ? "knuth2" : o.preset;
  int n = o.n > 0 ? o.n : 3;
  Presentation2 P = build(preset_from(preset), n);
  CompletionResult res = complete(P, CompletionBudget{200, 20000});
  if (o.format == "json") {
    json j{{"rules", res.system.rules.size()},
           {"added", res.rules_added},
           {"cells", res.cells.size()},
           {"branchings", res.branchings_processed},
           {"completed", res.completed}};
    out << j.dump(2) << "\n";
  } else {
    out << "rules: " << res.system.rules.size() << " (" << res.rules_added
        << " added)\n";
    out << "cells: " << res.cells.size() << "\n";
    out << "status: " << (res.completed ? "complete" : "budget-exhausted")
        << "\n";
  }
  return res.completed ? 0 : 2;
}

inline int cmd_counts(const Options& o, std::ostream& out) {
  int threads = o.threads > 0 ? o.threads : default_threads();
  std::vector<CellCountReport> rows;
  for (int n = 1; n <= o.n_max; ++n)
    rows.push_back(cell_counts(n, o.include_kb, threads));
  if (o.format == "json") {
    json a = json::array();
    for (int n = 1; n <= o.n_max; ++n) {
      const CellCountReport& r = rows[n - 1];
      json row{{"n", n},          {"knuth1", r.knuth1},
               {"colo1", r.colo1}, {"knuth2", r.knuth2},
               {"colo2", r.colo2}, {"knuth3", r.knuth3},
               {"bar_colo3", r.bar_colo3}, {"colo3", r.colo3}};
      if (o.include_kb) {
        row["kb2"] = r.kb2 ? json(*r.kb2) : json(nullptr);
        row["kb3"] = r.kb3 ? json(*r.kb3) : json(nullptr);
      }
      a.push_back(std::move(row));
    }
    out << json{{"rows", a}}.dump(2) << "\n";
    return 0;
  }
  out << "n,knuth1,colo1,knuth2,colo2,knuth3,bar_colo3,colo3";
  if (o.include_kb) out << ",kb2,kb3";
  out << "\n";
  auto inf_or = [](const std::optional<std::uint64_t>& v) {
    return v ? std::to_string(*v) : std::string("inf");
  };
  for (int n = 1; n <= o.n_max; ++n) {
    const CellCountReport& r = rows[n - 1];
    out << n << "," << r.knuth1 << "," << r.colo1 << "," << r.knuth2 << ","
        << r.colo2 << "," << r.knuth3 << "," << r.bar_colo3 << "," << r.colo3;
    if (o.include_kb) out << "," << inf_or(r.kb2) << "," << inf_or(r.kb3);
    out << "\n";
  }
  return 0;
}

inline int cmd_hexagon(const Options& o, std::ostream& out) {
  std::vector<Col> uvt = read_triple(o.triple, o.n);
  int n = o.n;
  if (n == 0)
    for (Col c : uvt) n = std::max(n, col_max(c));
  Presentation2 P = build(Preset::Colo2, n);
  Cell3 c = hexagon(P, uvt[0], uvt[1], uvt[2]);
  GenWord end = replay(P, c.left).second;
  if (o.format == "json") {
    json corners = json::object();
    for (const auto& [k, col] : c.corners) corners[k] = col_to_string(col);
    json j{{"name", c.name},
           {"family", family_name(c.family)},
           {"source", genword_json(c.source)},
           {"left", steps_json(P, c.left.steps)},
           {"right", steps_json(P, c.right.steps)},
           {"end", genword_json(end)},
           {"corners", corners}};
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "cell " << c.name << " family " << family_name(c.family) << "\n";
  out << "source: " << genword_str(c.source) << "\n";
  out << "left:  " << steps_str(P, c.left.steps) << " => " << genword_str(end)
      << "\n";
  out << "right: " << steps_str(P, c.right.steps) << " => " << genword_str(end)
      << "\n";
  if (!c.corners.empty()) {
    out << "corners:";
    for (const auto& [k, col] : c.corners) out << " " << k << "=" << col_to_string(col);
    out << "\n";
  }
  return 0;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  int n = o.n > 0 ? o.n : 3;
  if (n < 2 || n > 5) throw std::out_of_range("verify: 2 <= n <= 5");
  int threads = o.threads > 0 ? o.threads : default_threads();
  std::mt19937_64 rng(20260817);
  auto random_word = [&](int rank, int maxlen) {
    Word w(1 + rng() % maxlen);
    for (Letter& x : w) x = static_cast<Letter>(1 + rng() % rank);
    return w;
  };
  int fails = 0;
  auto report = [&](const char* name, bool ok) {
    out << (ok ? "ok " : "FAIL ") << name << "\n";
    if (!ok) ++fails;
  };

  {
    bool ok = true;
    for (Preset p : {Preset::Knuth2, Preset::KnuthCC2, Preset::CPC2,
                     Preset::PreColo2, Preset::Colo2})
      ok = ok && validate_order(build(p, n));
    report("orders", ok);
  }
  Presentation2 colo = build(Preset::Colo2, n);
  {
    bool ok = true;
    for (int i = 0; i < 300 && ok; ++i) {
      Word w = random_word(n, 10);
      ok = normalize(colo, letters_of(w)).nf == p_tableau(w).columns;
    }
    report("schensted", ok);
  }
  {
    bool ok = true;
    for (int i = 0; i < 300 && ok; ++i) {
      Tableau t = p_tableau(random_word(n, 10));
      auto back = tableau_check(row_reading(t));
      ok = back && *back == t && p_tableau(column_reading(t)) == t;
    }
    report("readings", ok);
  }
  {
    bool ok = true;
    std::uint64_t cells = 0;
    Col top = Col{1} << n;
    for (Col u = 1; u < top && ok; ++u)
      for (Col v = 1; v < top && ok; ++v) {
        if (pair_type(u, v) == PairType::Tableau1) continue;
        for (Col t = 1; t < top && ok; ++t) {
          if (pair_type(v, t) == PairType::Tableau1) continue;
          Cell3 c = hexagon(colo, u, v, t);
          ++cells;
          ok = replay(colo, c.left).second == replay(colo, c.right).second;
        }
      }
    ok = ok && cells == count_cells3(n, Restrict::All, threads);
    report("hexagons", ok);
  }
  {
    int m = std::min(n, 4);
    std::uint64_t want = count_reduced_cells3(type_tally(m, threads));
    CellSet pre = precolo3_cells(m);
    CellSet kn = knuth3_cells(m);
    bool ok = pre.cells.size() == want && kn.cells.size() == want;
    for (const Cell3& c : kn.cells) {
      ok = ok && check_zigzag(kn.system, c.left) &&
           check_zigzag(kn.system, c.right);
      ok = ok &&
           replay(kn.system, c.left).second == replay(kn.system, c.right).second;
    }
    report("cells", ok);
  }
  {
    int m = std::min(n, 3);
    CompletionResult res = complete(build(Preset::Knuth2, m));
    size_t want_rules = m == 3 ? 11 : 2;
    bool ok = res.completed && res.system.rules.size() == want_rules;
    report("completion", ok);
  }
  {
    bool ok = true;
    for (int i = 0; i < 400 && ok; ++i) {
      Word u = random_word(n, 8);
      Word v = flatten(normalize(colo, letters_of(u)).nf);
      ok = path_eq(u, v);
      Word x = random_word(n, 8);
      ok = ok && path_eq(u, x) == plactic_eq(u, x);
    }
    report("crystals", ok);
  }
  return fails ? 1 : 0;
}

inline int cmd_crystal(const Options& o, std::ostream& out) {
  auto [w, n] = read_word(o.word, o.n);
  (void)n;
  if (o.op == "hw") {
    auto [h, seq] = highest_weight(w);
    if (o.format == "json") {
      json j{{"word", word_to_string(h)}, {"sequence", seq}};
      out << j.dump(2) << "\n";
      return 0;
    }
    out << word_to_string(h) << "\n";
    for (size_t i = 0; i < seq.size(); ++i)
      out << (i ? " " : "") << seq[i];
    out << "\n";
    return 0;
  }
  if (o.op == "normalize") {
    Word c = crys_normalize(w);
    if (o.format == "json")
      out << json{{"result", word_to_string(c)}}.dump(2) << "\n";
    else
      out << word_to_string(c) << "\n";
    return 0;
  }
  if (o.op.size() < 2 || (o.op[0] != 'f' && o.op[0] != 'e') ||
      o.op.find_first_not_of("0123456789", 1) != std::string::npos)
    throw std::invalid_argument("crystal: op must be f<i>, e<i>, hw or normalize");
  int i = std::stoi(o.op.substr(1));
  std::optional<Word> r = root_op(o.op[0], i, w);
  if (o.format == "json") {
    json j{{"result", r ? json(word_to_string(*r)) : json(nullptr)}};
    out << j.dump(2) << "\n";
    return 0;
  }
  out << (r ? word_to_string(*r) : "undefined") << "\n";
  return 0;
}

inline int cmd_component(const Options& o, std::ostream& out) {
  auto [w, n] = read_word(o.word, o.n);
  CrystalGraph g = crystal_component(n, w);
  if (o.format == "json") {
    json verts = json::array();
    for (const Word& v : g.vertices) verts.push_back(word_to_string(v, n));
    json edges = json::array();
    for (const auto& [src, i, tgt] : g.edges)
      edges.push_back({{"from", src}, {"i", i}, {"to", tgt}});
    out << json{{"vertices", verts}, {"edges", edges}}.dump(2) << "\n";
    return 0;
  }
  if (o.format == "dot") {
    out << "digraph crystal {\n";
    for (size_t k = 0; k < g.vertices.size(); ++k)
      out << "  v" << k << " [label=\"" << word_to_string(g.vertices[k], n)
          << "\"];\n";
    for (const auto& [src, i, tgt] : g.edges)
      out << "  v" << src << " -> v" << tgt << " [label=\"" << i << "\"];\n";
    out << "}\n";
    return 0;
  }
  out << "vertices: " << g.vertices.size() << "\n";
  for (const Word& v : g.vertices) out << word_to_string(v, n) << "\n";
  return 0;
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out,
               std::ostream& err) {
  using namespace detail;
  CLI::App app{"plactic monoid workbench"};
  app.name("plactic");
  app.require_subcommand(0, 1);

  Options o;
  auto add_common = [&](CLI::App* c, std::initializer_list<const char*> names) {
    for (const char* nm : names) {
      std::string v(nm);
      if (v == "n") c->add_option("--n", o.n, "rank (letters 1..n)");
      if (v == "n-max") c->add_option("--n-max", o.n_max, "largest rank");
      if (v == "preset")
        c->add_option("--preset", o.preset, "presentation preset")
            ->check(CLI::IsMember(
                {"knuth2", "knuthcc2", "cpc2", "precolo2", "colo2"}));
      if (v == "word") c->add_option("--word", o.word, "input word");
      if (v == "triple") c->add_option("--triple", o.triple, "columns u,v,t");
      if (v == "strategy")
        c->add_option("--strategy", o.strategy, "rewriting strategy")
            ->check(CLI::IsMember({"leftmost", "rightmost", "random"}));
      if (v == "seed") c->add_option("--seed", o.seed, "random seed");
      if (v == "threads") c->add_option("--threads", o.threads, "worker count");
      if (v == "include-kb")
        c->add_flag("--include-kb", o.include_kb, "add completion columns");
    }
  };
  auto add_format = [&](CLI::App* c, std::vector<std::string> allowed) {
    c->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember(std::move(allowed)));
  };

  std::string word_pos;
  auto* c_tab = app.add_subcommand("tableau", "insert a word, print its tableau");
  c_tab->add_option("input", word_pos, "input word (positional)");
  add_common(c_tab, {"word", "n"});
  add_format(c_tab, {"text", "json"});

  auto* c_rules = app.add_subcommand("rules", "list rewriting rules");
  add_common(c_rules, {"preset", "n"});
  add_format(c_rules, {"text", "json"});

  auto* c_norm = app.add_subcommand("normalize", "rewrite a word to normal form");
  add_common(c_norm, {"word", "n", "preset", "strategy", "seed"});
  add_format(c_norm, {"text", "json"});

  auto* c_comp = app.add_subcommand("complete", "run Knuth-Bendix completion");
  add_common(c_comp, {"preset", "n"});
  add_format(c_comp, {"text", "json"});

  auto* c_cnt = app.add_subcommand("counts", "rule and cell counts per rank");
  add_common(c_cnt, {"n-max", "threads", "include-kb"});
  add_format(c_cnt, {"csv", "text", "json"});

  auto* c_hex = app.add_subcommand("hexagon", "close one critical branching");
  add_common(c_hex, {"triple", "n"});
  add_format(c_hex, {"text", "json"});

  auto* c_ver = app.add_subcommand("verify", "run the consistency battery");
  add_common(c_ver, {"n", "threads"});

  auto* c_cry = app.add_subcommand("crystal", "apply crystal operators");
  c_cry->add_option("--op", o.op, "f<i>, e<i>, hw or normalize")->required();
  add_common(c_cry, {"word", "n"});
  add_format(c_cry, {"text", "json"});

  auto* c_cmp = app.add_subcommand("component", "explore a crystal component");
  add_common(c_cmp, {"word", "n"});
  add_format(c_cmp, {"text", "dot", "json"});

  std::vector<const char*> argv{"plactic"};
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    o.seed_given = c_norm->count("--seed") > 0;

    if (c_tab->parsed()) {
      if (o.word.empty()) o.word = word_pos;
      if (o.word.empty() && word_pos.empty()) {
        err << usage_text();
        return 64;
      }
      return cmd_tableau(o, out);
    }
    if (c_rules->parsed()) return cmd_rules(o, out);
    if (c_norm->parsed()) {
      if (o.strategy == "random" && !o.seed_given) {
        err << "normalize: --strategy random requires --seed\n" << usage_text();
        return 64;
      }
      return cmd_normalize(o, out);
    }
    if (c_comp->parsed()) return cmd_complete(o, out);
    if (c_cnt->parsed()) return cmd_counts(o, out);
    if (c_hex->parsed()) return cmd_hexagon(o, out);
    if (c_ver->parsed()) return cmd_verify(o, out);
    if (c_cry->parsed()) return cmd_crystal(o, out);
    if (c_cmp->parsed()) return cmd_component(o, out);
    err << usage_text();
    return 64;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << usage_text();
    return 64;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace plactic::cli
