#include "propd2/decomp_graphs.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace propd2 {

namespace {

std::vector<int> valences(const DecompositionGraph& g) {
  std::vector<int> val(g.vcount(), 0);
  for (auto [u, v] : g.edges) {
    val[u]++;
    val[v]++;  // a loop counts twice
  }
  return val;
}

bool connected(const DecompositionGraph& g) {
  if (g.vcount() == 0) return false;
  std::vector<int> stack = {0};
  std::vector<bool> seen(g.vcount(), false);
  seen[0] = true;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (auto [a, b] : g.edges) {
      int other = -1;
      if (a == u && !seen[b]) other = b;
      if (b == u && !seen[a]) other = a;
      if (other >= 0) {
        seen[other] = true;
        stack.push_back(other);
      }
    }
  }
  return std::find(seen.begin(), seen.end(), false) == seen.end();
}

std::string encode(const DecompositionGraph& g, const std::vector<int>& perm) {
  std::ostringstream os;
  std::vector<int> inv(perm.size());
  for (size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> lab(g.vcount());
  for (int v = 0; v < g.vcount(); ++v) lab[inv[v]] = g.labels[v];
  std::vector<std::pair<int, int>> es;
  for (auto [u, v] : g.edges) {
    int a = inv[u], b = inv[v];
    es.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(es.begin(), es.end());
  for (auto [n, b] : lab) os << n << ',' << b << ';';
  os << '|';
  for (auto [a, b] : es) os << a << '-' << b << ';';
  return os.str();
}

}  // namespace

std::string canonical_form(const DecompositionGraph& g) {
  if (g.vcount() > 8) throw WordError("canonical_form: more than 8 vertices");
  std::vector<int> perm(g.vcount());
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::string e = encode(g, perm);
    if (best.empty() || e < best) best = std::move(e);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool is_isomorphic(const DecompositionGraph& a, const DecompositionGraph& b) {
  return canonical_form(a) == canonical_form(b);
}

bool graph_valid(const DecompositionGraph& g, int genus, int beta, std::string* why) {
  auto fail = [&](const std::string& r) {
    if (why) *why = r;
    return false;
  };
  if (g.vcount() == 0 || g.vcount() > 8) return fail("vertex count out of range");
  for (auto [u, v] : g.edges)
    if (u < 0 || v < 0 || u >= g.vcount() || v >= g.vcount()) return fail("bad edge endpoint");
  if (!connected(g)) return fail("not connected");
  if (g.ecount() == 0) return fail("empty multicurve");
  int nsum = 0, bsum = 0;
  for (auto [n, b] : g.labels) {
    if (n < 0 || n % 2 != 0 || b < 0) return fail("bad vertex label");
    nsum += n;
    bsum += b;
  }
  if (bsum != beta) return fail("boundary labels do not sum to beta");
  // rank identity: sum(n_v + b_v) + 2(1 - chi(X)) - eps = rk Gamma
  int chi = g.vcount() - g.ecount();
  int eps = beta == 0 ? 0 : 1;
  int rk = beta == 0 ? 2 * genus : 2 * genus + beta - 1;
  if (nsum + bsum + 2 * (1 - chi) - eps != rk) return fail("rank identity fails");
  auto val = valences(g);
  bool torus_loop = g.vcount() == 1 && g.ecount() == 1 && g.labels[0] == std::pair<int, int>{0, 0} &&
                    g.edges[0].first == g.edges[0].second;
  for (int v = 0; v < g.vcount(); ++v)
    if (g.labels[v].first == 0 && g.labels[v].second + val[v] <= 2 && !torus_loop)
      return fail("n_v = 0 vertex with b_v + val <= 2");
  if (why) why->clear();
  return true;
}

std::vector<DecompositionGraph> enumerate_graphs(int genus, int beta, int max_edges,
                                                 bool pants_only) {
  if (genus < 0 || beta < 0 || max_edges < 1) throw WordError("enumerate_graphs: bad parameters");
  int pants_edges = 3 * genus - 3 + beta;
  std::map<std::string, DecompositionGraph> found;

  for (int k = 1; k <= max_edges; ++k) {
    for (int v = 1; v <= std::min(8, k + 1); ++v) {
      int cycles = k - v + 1;
      if (cycles < 0 || genus - cycles < 0) continue;
      int gint = genus - cycles;  // sum of vertex genera

      // all k-multisets of vertex pairs (i <= j)
      std::vector<std::pair<int, int>> pairs;
      for (int i = 0; i < v; ++i)
        for (int j = i; j < v; ++j) pairs.push_back({i, j});
      std::vector<int> pick(k, 0);  // non-decreasing indices into pairs
      while (true) {
        DecompositionGraph base;
        base.labels.assign(v, {0, 0});
        for (int e : pick) base.edges.push_back(pairs[e]);
        if (connected(base)) {
          // distribute vertex genera and boundary labels
          std::vector<std::vector<int>> gparts, bparts;
          std::vector<int> cur(v, 0);
          auto compositions = [&](int total, auto& outv) {
            std::vector<int> c(v, 0);
            int idx = 0;
            c[0] = total;
            while (true) {
              outv.push_back(c);
              // next composition in colex-ish order
              int j = v - 1;
              while (j > 0 && c[j - 1] == 0) --j;
              if (j == 0) break;
              c[j - 1]--;
              int rest = total;
              for (int t = 0; t < j; ++t) rest -= c[t];
              c[j] = rest;
              for (int t = j + 1; t < v; ++t) c[t] = 0;
            }
            (void)idx;
          };
          compositions(gint, gparts);
          compositions(beta, bparts);
          for (const auto& gp : gparts)
            for (const auto& bp : bparts) {
              DecompositionGraph cand = base;
              for (int i = 0; i < v; ++i) cand.labels[i] = {2 * gp[i], bp[i]};
              if (!graph_valid(cand, genus, beta)) continue;
              if (pants_only) {
                if (k != pants_edges) continue;
                bool zero = true;
                for (auto [n, b] : cand.labels)
                  if (n != 0 || b != 0) zero = false;
                if (!zero) continue;
              }
              found.emplace(canonical_form(cand), cand);
            }
        }
        // advance non-decreasing index vector
        int pos = k - 1;
        while (pos >= 0 && pick[pos] == static_cast<int>(pairs.size()) - 1) --pos;
        if (pos < 0) break;
        pick[pos]++;
        for (int t = pos + 1; t < k; ++t) pick[t] = pick[pos];
      }
    }
  }
  std::vector<DecompositionGraph> out;
  for (auto& [key, g] : found) out.push_back(std::move(g));
  return out;
}

DecompositionGraph collapse(const DecompositionGraph& g, const std::vector<int>& edge_subset) {
  std::vector<bool> in_subset(g.ecount(), false);
  for (int e : edge_subset) {
    if (e < 0 || e >= g.ecount()) throw WordError("collapse: bad edge index");
    in_subset[e] = true;
  }
  // union-find over contracted edges
  std::vector<int> parent(g.vcount());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (int e = 0; e < g.ecount(); ++e)
    if (in_subset[e]) parent[find(g.edges[e].first)] = find(g.edges[e].second);

  std::map<int, int> newid;
  for (int v = 0; v < g.vcount(); ++v) newid.emplace(find(v), static_cast<int>(newid.size()));

  DecompositionGraph out;
  out.labels.assign(newid.size(), {0, 0});
  std::vector<int> vy(newid.size(), 0), ey(newid.size(), 0);
  for (int v = 0; v < g.vcount(); ++v) {
    int c = newid[find(v)];
    out.labels[c].first += g.labels[v].first;
    out.labels[c].second += g.labels[v].second;
    vy[c]++;
  }
  for (int e = 0; e < g.ecount(); ++e) {
    int cu = newid[find(g.edges[e].first)], cv = newid[find(g.edges[e].second)];
    if (in_subset[e])
      ey[cu]++;  // contracted edge is internal to its class
    else
      out.edges.push_back({std::min(cu, cv), std::max(cu, cv)});
  }
  // merged genus picks up the contracted piece's cycle rank
  for (size_t c = 0; c < newid.size(); ++c)
    if (vy[c] > 1 || ey[c] > 0) out.labels[c].first += 2 * (ey[c] - vy[c] + 1);
  return out;
}

std::vector<DownsetEntry> downset(const DecompositionGraph& g, int genus, int beta) {
  if (g.ecount() > 6) throw WordError("downset: more than 6 edges");
  std::vector<DownsetEntry> out;
  int total = 1 << g.ecount();
  for (int mask = 0; mask < total; ++mask) {
    DownsetEntry entry;
    for (int e = 0; e < g.ecount(); ++e)
      if (mask & (1 << e)) entry.subset.push_back(e);
    entry.result = collapse(g, entry.subset);
    entry.valid = graph_valid(entry.result, genus, beta);
    out.push_back(std::move(entry));
  }
  return out;
}

std::string to_dot(const DecompositionGraph& g) {
  std::ostringstream os;
  os << "graph decomposition {\n";
  for (int v = 0; v < g.vcount(); ++v)
    os << "  v" << v << " [label=\"n=" << g.labels[v].first << ",b=" << g.labels[v].second
       << "\"];\n";
  for (auto [u, v] : g.edges) os << "  v" << u << " -- v" << v << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace propd2
