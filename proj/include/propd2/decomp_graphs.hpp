#pragma once

#include <string>
#include <vector>

#include "propd2/words.hpp"

namespace propd2 {

/// Connected labelled multigraph encoding a splitting: vertex labels
/// (n_v, b_v) with n_v = 2 x genus of the piece (even), b_v boundary count.
struct DecompositionGraph {
  std::vector<std::pair<int, int>> labels;  // (n_v, b_v) per vertex
  std::vector<std::pair<int, int>> edges;   // endpoints, loops allowed

  int vcount() const { return static_cast<int>(labels.size()); }
  int ecount() const { return static_cast<int>(edges.size()); }
};

/// Minimal label-respecting encoding over all vertex permutations; |V| <= 8.
std::string canonical_form(const DecompositionGraph& g);
bool is_isomorphic(const DecompositionGraph& a, const DecompositionGraph& b);

/// All decomposition-graph constraints for the (genus, beta) surface:
/// connectivity, even n_v, sum b_v = beta, the rank identity, and
/// b_v + val(v) > 2 at n_v = 0 vertices (loop-on-torus excepted).
bool graph_valid(const DecompositionGraph& g, int genus, int beta,
                 std::string* why = nullptr);

/// Exhaustive isomorphism-class representatives with 1..max_edges edges,
/// canonical output order.  pants_only keeps exactly the 3g-3+beta -edge
/// graphs with all labels zero.
std::vector<DecompositionGraph> enumerate_graphs(int genus, int beta, int max_edges,
                                                 bool pants_only = false);

/// Contract the listed edges (0-based indices): each connected piece Y of
/// the contracted subgraph merges to one vertex with n = sum n_v + 2(|E_Y| -
/// |V_Y| + 1) and b = sum b_v.
DecompositionGraph collapse(const DecompositionGraph& g, const std::vector<int>& edge_subset);

struct DownsetEntry {
  std::vector<int> subset;  // contracted edge indices, ascending
  DecompositionGraph result;
  bool valid = false;  // total collapse is the flagged degenerate output
};

/// The Boolean lattice of edge subsets with collapse results; |E| <= 6.
std::vector<DownsetEntry> downset(const DecompositionGraph& g, int genus, int beta);

std::string to_dot(const DecompositionGraph& g);

}  // namespace propd2
