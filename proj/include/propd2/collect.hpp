#pragma once

#include <map>
#include <memory>

#include "propd2/hall.hpp"

namespace propd2 {

/// Truncation data for a class-c free nilpotent quotient: the prime p, the
/// q-series parameter q = p^m (q = 0 meaning p^infty), the class bound and
/// the exponent modulus p^M.
struct TruncationParams {
  int p = 3;
  Int q = 0;  // p^m, or 0
  int cls = 2;
  int mod_exp = 0;  // M
  Int modulus = 0;  // p^M

  static TruncationParams make(int p, const Int& q, int cls, int mod_exp = -1);
  /// The exponent m with q = p^m (only valid when q != 0).
  int q_exp() const;
};

/// Exponent coordinates over a Hall basis.  Coordinates are held exactly;
/// comparisons and serialization reduce mod p^M.
struct MalcevElement {
  std::vector<Int> coords;  // one per HallBasis entry

  bool is_zero() const {
    for (const Int& c : coords)
      if (c != 0) return false;
    return true;
  }
};

/// Sparse normal form: (entry index, exponent), strictly increasing indices,
/// nonzero exponents.
using NormalWord = std::vector<std::pair<int, Int>>;

/// An element of gr_j as a coefficient vector over the basis
/// {pi^a . c : c a Hall entry of weight j-a}.  For q != 0 coefficients are
/// residues mod q and every weight w <= j contributes; for q = 0 only
/// weight-j entries appear and coefficients live mod p^M.
struct GradedElement {
  int j = 1;
  std::vector<Int> coeffs;

  bool is_zero() const {
    for (const Int& c : coeffs)
      if (c != 0) return false;
    return true;
  }
};

/// Collection into Mal'cev coordinates for the class-c free nilpotent
/// quotient, plus the lower central q-series filtration and projection to
/// graded pieces.  Collection repeatedly applies the two product identities
/// [uv,w] = [u,w][[u,w],v][v,w] and [u,vw] = [u,w][u,v][[u,v],w], pushing
/// commutators to the right and discarding weight > c.
class NilpotentQuotient {
 public:
  NilpotentQuotient(GeneratorSet gens, TruncationParams params);

  const HallBasis& basis() const { return basis_; }
  const TruncationParams& params() const { return params_; }
  const GeneratorSet& gens() const { return gens_; }

  MalcevElement collect(const FreeWord& w) const;
  MalcevElement multiply(const MalcevElement& a, const MalcevElement& b) const;
  MalcevElement power(const MalcevElement& a, const Int& k) const;
  MalcevElement commutator(const MalcevElement& a, const MalcevElement& b) const;
  MalcevElement inverse(const MalcevElement& a) const;
  MalcevElement identity() const;

  bool equal(const MalcevElement& a, const MalcevElement& b) const;
  /// Canonical residues in [0, p^M).
  std::vector<Int> reduced_coords(const MalcevElement& a) const;

  /// Largest j in 1..c+1 with a in G_j, via the coordinate divisibility
  /// rule: a in G_j iff q^{j-w} divides every weight-w coordinate, w < j.
  int filtration_weight(const MalcevElement& a) const;

  /// Image of a in gr_j; requires filtration_weight(a) >= j.
  GradedElement project_gr(const MalcevElement& a, int j) const;

  /// Basis description (pi power, hall index) of gr_j in coefficient order.
  std::vector<std::pair<int, int>> gr_basis(int j) const;
  Int gr_modulus() const;  // q, or p^M when q = 0

  NormalWord to_normal(const MalcevElement& a) const;
  MalcevElement from_normal(const NormalWord& w) const;

 private:
  GeneratorSet gens_;
  TruncationParams params_;
  HallBasis basis_;
  mutable std::map<std::pair<int, int>, NormalWord> comm_cache_;

  NormalWord nw_mul(NormalWord a, const NormalWord& b) const;
  NormalWord nw_mul_letter(NormalWord a, int idx, const Int& e) const;
  NormalWord nw_inverse(const NormalWord& a) const;
  NormalWord nw_power(const NormalWord& a, Int k) const;
  /// [u, v] for possibly unnormalized letter sequences.
  NormalWord seq_comm(const NormalWord& u, const NormalWord& v) const;
  /// [c_j^a, c_i^e] with j > i.
  NormalWord comm_pow(int j, const Int& a, int i, const Int& e) const;
  /// [c_j, c_i] with j > i.
  NormalWord comm_basic(int j, int i) const;
  int min_weight(const NormalWord& w) const;
};

}  // namespace propd2
