// Builds the tableau of a word, shows its readings, and rewrites the word to
// the same answer with the column rules.

#include <iostream>

#include "plactic/core.hpp"
#include "plactic/engine.hpp"
#include "plactic/presentations.hpp"
#include "plactic/schensted.hpp"

using namespace plactic;

int main(int argc, char** argv) {
  std::string input = argc > 1 ? argv[1] : "421532435452";
  Word w;
  try {
    w = parse_word(input, 9);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  Tableau t = p_tableau(w);
  std::cout << "word: " << word_to_string(w) << "\n\n";

  auto rows = t.rows();
  for (auto it = rows.rbegin(); it != rows.rend(); ++it)
    std::cout << "  " << word_to_string(*it) << "\n";
  std::cout << "\n";

  std::cout << "row reading:    " << word_to_string(row_reading(t)) << "\n";
  std::cout << "column reading: " << word_to_string(column_reading(t)) << "\n";
  std::cout << "longest nondecreasing subsequence: " << lnds(w) << "\n";

  // the column rewriting system reaches the same tableau, one rule at a time
  int n = 1;
  for (Letter x : w) n = std::max(n, static_cast<int>(x));
  Presentation2 colo = build(Preset::Colo2, n);
  GenWord start;
  for (Letter x : w) start.push_back(letter_gen(x));
  NormalizeResult nf = normalize(colo, start);
  std::cout << "column normal form (" << nf.deriv.steps.size() << " steps):";
  for (Col c : nf.nf) std::cout << " " << col_to_string(c);
  std::cout << "\n";
  std::cout << "matches the inserted tableau: "
            << (nf.nf == t.columns ? "yes" : "no") << "\n";
  return 0;
}
