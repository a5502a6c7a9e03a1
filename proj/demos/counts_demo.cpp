// Tabulates, per rank, the sizes of the rewriting presentations and the
// number of generating confluence cells of the column system.

#include <cstdio>
#include <cstdlib>

#include "plactic/coherence.hpp"

using namespace plactic;

int main(int argc, char** argv) {
  int n_max = argc > 1 ? std::atoi(argv[1]) : 6;
  if (n_max < 1 || n_max > 10) {
    std::fprintf(stderr, "usage: %s [n_max in 1..10]\n", argv[0]);
    return 1;
  }

  std::printf("%3s %8s %8s %8s %10s %10s %10s %12s\n", "n", "letters",
              "columns", "relations", "col pairs", "reduced", "one-col",
              "all triples");
  for (int n = 1; n <= n_max; ++n) {
    CellCountReport r = cell_counts(n);
    std::printf("%3d %8llu %8llu %8llu %10llu %10llu %10llu %12llu\n", n,
                static_cast<unsigned long long>(r.knuth1),
                static_cast<unsigned long long>(r.colo1),
                static_cast<unsigned long long>(r.knuth2),
                static_cast<unsigned long long>(r.colo2),
                static_cast<unsigned long long>(r.knuth3),
                static_cast<unsigned long long>(r.bar_colo3),
                static_cast<unsigned long long>(r.colo3));
  }
  return 0;
}
