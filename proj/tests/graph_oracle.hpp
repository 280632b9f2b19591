#pragma once

#include <set>

#include "propd2/decomp_graphs.hpp"

namespace propd2::testutil {

/// Independent brute force: ordered edge tuples and direct label counters,
/// deduplicated by canonical form.  Counts graphs with exactly edges_exact
/// edges.
inline int oracle_count(int genus, int beta, int edges_exact, bool pants) {
  std::set<std::string> forms;
  for (int v = 1; v <= edges_exact + 1; ++v) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < v; ++i)
      for (int j = i; j < v; ++j) pairs.push_back({i, j});
    std::vector<int> et(edges_exact, 0);
    while (true) {
      DecompositionGraph g;
      g.labels.assign(v, {0, 0});
      for (int e : et) g.edges.push_back(pairs[e]);
      std::vector<int> lc(v, 0);
      int opts = (genus + 1) * (beta + 1);
      while (true) {
        for (int i = 0; i < v; ++i)
          g.labels[i] = {2 * (lc[i] / (beta + 1)), lc[i] % (beta + 1)};
        bool ok = graph_valid(g, genus, beta);
        if (ok && pants) {
          if (edges_exact != 3 * genus - 3 + beta) ok = false;
          for (auto [n, b] : g.labels)
            if (n != 0 || b != 0) ok = false;
        }
        if (ok) forms.insert(canonical_form(g));
        int pos = v - 1;
        while (pos >= 0 && lc[pos] == opts - 1) lc[pos--] = 0;
        if (pos < 0) break;
        lc[pos]++;
      }
      int pos = edges_exact - 1;
      while (pos >= 0 && et[pos] == static_cast<int>(pairs.size()) - 1) et[pos--] = 0;
      if (pos < 0) break;
      et[pos]++;
    }
  }
  return static_cast<int>(forms.size());
}

}  // namespace propd2::testutil
