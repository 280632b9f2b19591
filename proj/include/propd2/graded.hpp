#pragma once

#include "propd2/collect.hpp"

namespace propd2 {

/// Arithmetic in gr(G) = sum of G_j/G_{j+1} as a module over (Z/q)[pi].
/// Brackets use structure constants of the free Lie ring on the Hall basis,
/// computed by Jacobi rewriting -- independent of the collection process, so
/// the project_gr intertwining tests are meaningful.
class Graded {
 public:
  explicit Graded(const NilpotentQuotient& nq) : nq_(&nq) {}

  const NilpotentQuotient& nq() const { return *nq_; }

  GradedElement zero(int j) const;
  GradedElement unit(int j, size_t pos) const;
  /// The weight-1 class of generator g (1-based).
  GradedElement generator_class(int g) const;
  GradedElement add(const GradedElement& a, const GradedElement& b) const;
  GradedElement scale(const GradedElement& a, const Int& k) const;
  /// [a, b] in gr_{a.j + b.j}; throws past the tracked class.
  GradedElement bracket(const GradedElement& a, const GradedElement& b) const;
  /// pi . a in gr_{j+1}; zero when q = 0.
  GradedElement pi_apply(const GradedElement& a) const;

  /// [c_k, c_l] in the free Lie ring, as exact integer combination of basis
  /// entries (k, l arbitrary distinct indices).
  std::map<int, Int> lie_basis(int k, int l) const;

 private:
  const NilpotentQuotient* nq_;
  mutable std::map<std::pair<int, int>, std::map<int, Int>> lie_cache_;
  mutable std::map<int, std::map<std::pair<int, int>, size_t>> pos_cache_;

  size_t gr_index(int j, int piexp, int idx) const;
  std::map<int, Int> lie_combo(const std::map<int, Int>& a, int r) const;
};

/// The matrix of delta_{j-1} over the pi^a.c basis of gr_j.  Columns: n+b
/// blocks of dim gr_{j-1} (slots for t_1..t_{n+b}), then for q = 2 the b
/// epsilon columns and n alpha columns.
struct DeltaMap {
  int j = 3;
  int n = 0;
  int b = 0;
  bool augmented = false;  // q = 2: epsilon + alpha columns present
  int t_block = 0;         // dim gr_{j-1}
  Int mod = 0;             // q, or p^M when q = 0
  int p = 0;
  std::vector<std::vector<Int>> rows;  // dim gr_j rows

  int cols() const { return (n + b) * t_block + (augmented ? n + b : 0); }
};

/// sigma_images: weight-1 classes of the current peripheral generators.
DeltaMap delta_matrix(const Graded& gr, int n, int b, int j,
                      const std::vector<GradedElement>& sigma_images);

struct SolveResult {
  bool solved = false;
  bool full_row_rank = false;
  std::vector<Int> x;  // residues mod `mod`, empty when !solved
};

/// Deterministic elimination over Z/p^K: pivots chosen by minimal
/// p-valuation, row-major first among ties; free variables set to zero.
SolveResult solve_linear(const DeltaMap& map, const std::vector<Int>& target);

}  // namespace propd2
