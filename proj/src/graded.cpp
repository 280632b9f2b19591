#include "propd2/graded.hpp"

namespace propd2 {

namespace {

Int mod_reduce(Int v, const Int& m) {
  v %= m;
  if (v < 0) v += m;
  return v;
}

}  // namespace

GradedElement Graded::zero(int j) const {
  GradedElement g;
  g.j = j;
  g.coeffs.assign(nq_->gr_basis(j).size(), 0);
  return g;
}

GradedElement Graded::unit(int j, size_t pos) const {
  GradedElement g = zero(j);
  g.coeffs.at(pos) = 1;
  return g;
}

GradedElement Graded::generator_class(int g) const {
  // weight-1 entries are 0..rank-1 and gr_1 has no pi part
  return unit(1, g - 1);
}

GradedElement Graded::add(const GradedElement& a, const GradedElement& b) const {
  if (a.j != b.j || a.coeffs.size() != b.coeffs.size())
    throw WordError("graded add: weight mismatch");
  GradedElement r = a;
  Int m = nq_->gr_modulus();
  for (size_t i = 0; i < r.coeffs.size(); ++i)
    r.coeffs[i] = mod_reduce(r.coeffs[i] + b.coeffs[i], m);
  return r;
}

GradedElement Graded::scale(const GradedElement& a, const Int& k) const {
  GradedElement r = a;
  Int m = nq_->gr_modulus();
  for (auto& c : r.coeffs) c = mod_reduce(c * k, m);
  return r;
}

size_t Graded::gr_index(int j, int piexp, int idx) const {
  auto it = pos_cache_.find(j);
  if (it == pos_cache_.end()) {
    auto basis = nq_->gr_basis(j);
    std::map<std::pair<int, int>, size_t> m;
    for (size_t i = 0; i < basis.size(); ++i) m[basis[i]] = i;
    it = pos_cache_.emplace(j, std::move(m)).first;
  }
  return it->second.at({piexp, idx});
}

std::map<int, Int> Graded::lie_combo(const std::map<int, Int>& a, int r) const {
  std::map<int, Int> out;
  for (const auto& [e, c] : a) {
    if (e == r) continue;
    for (const auto& [f, d] : lie_basis(e, r)) {
      Int& v = out[f];
      v += c * d;
      if (v == 0) out.erase(f);
    }
  }
  return out;
}

std::map<int, Int> Graded::lie_basis(int k, int l) const {
  const HallBasis& h = nq_->basis();
  if (k == l) return {};
  if (k < l) {
    std::map<int, Int> r = lie_basis(l, k);
    for (auto& [e, c] : r) c = -c;
    return r;
  }
  if (h.weight(k) + h.weight(l) > nq_->params().cls) return {};
  if (auto idx = h.definition(k, l)) return {{*idx, 1}};
  auto it = lie_cache_.find({k, l});
  if (it != lie_cache_.end()) return it->second;
  // k = [A,B] with B > l; Jacobi: [[A,B],l] = [[A,l],B] - [[B,l],A]
  const BasicCommutator& c = h.entry(k);
  std::map<int, Int> r = lie_combo(lie_basis(c.left, l), c.right);
  for (const auto& [e, d] : lie_combo(lie_basis(c.right, l), c.left)) {
    Int& v = r[e];
    v -= d;
    if (v == 0) r.erase(e);
  }
  lie_cache_[{k, l}] = r;
  return r;
}

GradedElement Graded::bracket(const GradedElement& a, const GradedElement& b) const {
  int j = a.j + b.j;
  if (j > nq_->params().cls) throw WordError("bracket: weight beyond tracked class");
  GradedElement r = zero(j);
  Int m = nq_->gr_modulus();
  auto ba = nq_->gr_basis(a.j);
  auto bb = nq_->gr_basis(b.j);
  for (size_t ia = 0; ia < ba.size(); ++ia) {
    if (a.coeffs[ia] == 0) continue;
    for (size_t ib = 0; ib < bb.size(); ++ib) {
      if (b.coeffs[ib] == 0) continue;
      Int coef = a.coeffs[ia] * b.coeffs[ib];
      int piexp = ba[ia].first + bb[ib].first;
      for (const auto& [e, d] : lie_basis(ba[ia].second, bb[ib].second)) {
        size_t pos = gr_index(j, piexp, e);
        r.coeffs[pos] = mod_reduce(r.coeffs[pos] + coef * d, m);
      }
    }
  }
  return r;
}

GradedElement Graded::pi_apply(const GradedElement& a) const {
  int j = a.j + 1;
  if (j > nq_->params().cls) throw WordError("pi_apply: weight beyond tracked class");
  GradedElement r = zero(j);
  if (nq_->params().q == 0) return r;  // pi = 0 convention
  auto ba = nq_->gr_basis(a.j);
  for (size_t i = 0; i < ba.size(); ++i) {
    if (a.coeffs[i] == 0) continue;
    r.coeffs[gr_index(j, ba[i].first + 1, ba[i].second)] = a.coeffs[i];
  }
  return r;
}

DeltaMap delta_matrix(const Graded& gr, int n, int b, int j,
                      const std::vector<GradedElement>& sigma_images) {
  const NilpotentQuotient& nq = gr.nq();
  if (j < 3) throw WordError("delta_matrix: j >= 3 required");
  if (j > nq.params().cls) throw WordError("delta_matrix: class too small");
  if (static_cast<int>(sigma_images.size()) != b)
    throw WordError("delta_matrix: one sigma image per peripheral required");
  const Int& q = nq.params().q;
  const GeneratorSet gens(n, b);
  if (gens.rank() != nq.basis().rank()) throw WordError("delta_matrix: rank mismatch");

  DeltaMap d;
  d.j = j;
  d.n = n;
  d.b = b;
  d.augmented = (q == 2);
  d.t_block = static_cast<int>(nq.gr_basis(j - 1).size());
  d.mod = nq.gr_modulus();
  d.p = nq.params().p;

  Int binom = q == 0 ? Int(0) : (q * (q - 1) / 2) % q;
  int rows = static_cast<int>(nq.gr_basis(j).size());
  std::vector<GradedElement> cols;

  // The formula's brackets and pi are the induced maps on gr.  For p = 2
  // these differ from the free-Lie structure constants by correction terms
  // on pi-towers over weight-1 entries, so every term is evaluated on group
  // representatives and projected -- exact for every q.
  auto gen_elt = [&](int g) { return nq.collect(FreeWord::generator(gens, g)); };
  auto true_bracket_gen = [&](const MalcevElement& t, int g, bool gen_left) {
    auto c = gen_left ? nq.commutator(gen_elt(g), t) : nq.commutator(t, gen_elt(g));
    return nq.project_gr(c, j);
  };
  // group representative of a weight-1 class
  auto class_rep = [&](const GradedElement& s) {
    MalcevElement r = nq.identity();
    for (int g = 0; g < gens.rank(); ++g) r.coords[g] = s.coeffs[g];
    return r;
  };

  auto basis_jm1 = nq.gr_basis(j - 1);
  for (int slot = 1; slot <= n + b; ++slot) {
    for (int u = 0; u < d.t_block; ++u) {
      auto [piexp, idx] = basis_jm1[u];
      // representative c^(q^piexp) of the domain basis element
      MalcevElement t = nq.identity();
      t.coords[idx] = piexp == 0 ? Int(1) : [&] {
        Int v = 1;
        for (int i = 0; i < piexp; ++i) v *= q;
        return v;
      }();
      GradedElement img = gr.zero(j);
      if (slot == 1 && n >= 1) {
        img = gr.add(img, nq.project_gr(nq.power(t, q), j));
        if (binom != 0)
          img = gr.add(img, gr.scale(true_bracket_gen(t, 1, false), binom));
      }
      if (slot <= n) {
        bool left_of_pair, in_pair = true;
        if (n % 2 == 0) {
          left_of_pair = (slot % 2 == 1);
        } else {
          // q = 2, n odd: pairs (2i, 2i+1); slot 1 carries only pi/binom terms
          in_pair = slot >= 2;
          left_of_pair = (slot % 2 == 0);
        }
        if (in_pair) {
          if (left_of_pair) img = gr.add(img, true_bracket_gen(t, slot + 1, false));
          else img = gr.add(img, true_bracket_gen(t, slot - 1, true));
        }
      } else {
        const GradedElement& s = sigma_images[slot - n - 1];
        img = gr.add(img, nq.project_gr(nq.commutator(class_rep(s), t), j));
      }
      cols.push_back(img);
    }
  }
  if (d.augmented) {
    Int pw = 1;
    for (int k = 1; k < j; ++k) pw *= 2;
    // epsilon_i column: pi^{j-1}.sigma_i  (the s_i -> s_i^{1+2^{j-1}} update)
    for (int i = 0; i < b; ++i)
      cols.push_back(nq.project_gr(nq.power(class_rep(sigma_images[i]), pw), j));
    // alpha_i column: pi^{j-1}.xi_i
    for (int i = 1; i <= n; ++i)
      cols.push_back(nq.project_gr(nq.power(gen_elt(i), pw), j));
  }

  d.rows.assign(rows, std::vector<Int>(cols.size(), 0));
  for (size_t c = 0; c < cols.size(); ++c)
    for (int r = 0; r < rows; ++r) d.rows[r][c] = cols[c].coeffs[r];
  return d;
}

SolveResult solve_linear(const DeltaMap& map, const std::vector<Int>& target) {
  int nrows = static_cast<int>(map.rows.size());
  int ncols = map.cols();
  if (static_cast<int>(target.size()) != nrows)
    throw WordError("solve_linear: target dimension mismatch");
  const Int& mod = map.mod;
  int p = map.p;
  int K = 0;
  {
    Int v = mod;
    while (v > 1) {
      v /= p;
      ++K;
    }
  }
  auto valuation = [&](const Int& x) {
    if (x == 0) return K;
    int v = 0;
    Int y = x;
    while (y % p == 0 && v < K) {
      y /= p;
      ++v;
    }
    return v;
  };

  std::vector<std::vector<Int>> a = map.rows;
  std::vector<Int> t = target;
  for (auto& row : a)
    for (auto& e : row) e = mod_reduce(e, mod);
  for (auto& e : t) e = mod_reduce(e, mod);

  std::vector<bool> row_done(nrows, false), col_done(ncols, false);
  std::vector<std::pair<int, int>> pivots;  // (row, col) in elimination order
  std::vector<int> pivval;

  // modular inverse of a unit via extended euclid
  auto inv_mod = [&](Int u) {
    Int g = mod, x0 = 0, x1 = 1, v = mod_reduce(u, mod);
    Int r0 = g, r1 = v;
    while (r1 != 0) {
      Int qt = r0 / r1;
      Int r2 = r0 - qt * r1;
      Int x2 = x0 - qt * x1;
      r0 = r1;
      r1 = r2;
      x0 = x1;
      x1 = x2;
    }
    return mod_reduce(x0, mod);
  };

  for (int step = 0; step < std::min(nrows, ncols); ++step) {
    int best_r = -1, best_c = -1, best_v = K;
    for (int r = 0; r < nrows && best_v > 0; ++r) {
      if (row_done[r]) continue;
      for (int c = 0; c < ncols; ++c) {
        if (col_done[c]) continue;
        int v = valuation(a[r][c]);
        if (v < best_v) {
          best_v = v;
          best_r = r;
          best_c = c;
          if (v == 0) break;
        }
      }
    }
    if (best_r < 0 || best_v >= K) break;
    // normalize pivot row so the pivot becomes p^v
    Int pv = a[best_r][best_c];
    Int punit = pv;
    for (int i = 0; i < best_v; ++i) punit /= p;
    Int ui = inv_mod(punit);
    for (int c = 0; c < ncols; ++c) a[best_r][c] = mod_reduce(a[best_r][c] * ui, mod);
    t[best_r] = mod_reduce(t[best_r] * ui, mod);
    Int pivot = a[best_r][best_c];  // = p^v
    // clear the column below in the remaining rows
    for (int r = 0; r < nrows; ++r) {
      if (r == best_r || row_done[r]) continue;
      if (a[r][best_c] == 0) continue;
      Int f = a[r][best_c] / pivot;  // valuation >= v, exact
      for (int c = 0; c < ncols; ++c) a[r][c] = mod_reduce(a[r][c] - f * a[best_r][c], mod);
      t[r] = mod_reduce(t[r] - f * t[best_r], mod);
    }
    row_done[best_r] = true;
    col_done[best_c] = true;
    pivots.push_back({best_r, best_c});
    pivval.push_back(best_v);
  }

  SolveResult res;
  // rows without pivots must have zero target
  for (int r = 0; r < nrows; ++r) {
    if (!row_done[r] && t[r] != 0) return res;
  }
  res.full_row_rank = static_cast<int>(pivots.size()) == nrows;
  for (int v : pivval)
    if (v != 0) res.full_row_rank = false;

  // back substitution in reverse elimination order, free variables zero
  std::vector<Int> x(ncols, 0);
  for (int i = static_cast<int>(pivots.size()) - 1; i >= 0; --i) {
    auto [r, c] = pivots[i];
    Int rhs = t[r];
    for (int cc = 0; cc < ncols; ++cc) {
      if (cc == c) continue;
      if (a[r][cc] != 0 && x[cc] != 0) rhs = mod_reduce(rhs - a[r][cc] * x[cc], mod);
    }
    Int piv = a[r][c];  // p^v
    if (piv == 1) {
      x[c] = rhs;
    } else {
      if (rhs % piv != 0) return res;
      x[c] = rhs / piv;
    }
  }
  res.solved = true;
  res.x = std::move(x);
  return res;
}

}  // namespace propd2
