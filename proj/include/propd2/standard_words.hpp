#pragma once

#include <optional>
#include <variant>

#include "propd2/collect.hpp"

namespace propd2 {

/// Orientation characters classified by their image in U_p: trivial,
/// U_p^(m), <-1> x U_2^(f), or U_2^[f].  The f = infinity variants are not
/// representable (truncated arithmetic cannot distinguish them) and are
/// deliberately excluded.
struct OrientationCharacter {
  enum class Kind { Trivial, Up, MinusTimes, MinusPower };

  int p = 3;
  Kind kind = Kind::Trivial;
  int param = 0;  // m for Up, f for the minus kinds

  static OrientationCharacter trivial(int p);
  static OrientationCharacter up(int p, int m);
  static OrientationCharacter minus_times(int f);  // im = <-1> x U_2^(f)
  static OrientationCharacter minus_power(int f);  // im = U_2^[f]

  /// q(chi): 0 for trivial, p^m for Up, 2 for the minus kinds.
  Int q() const;
  bool operator==(const OrientationCharacter&) const = default;
};

struct StandardWordSpec {
  int n = 0;
  int b = 0;
  OrientationCharacter chi;

  /// Whether one of the four standard-word cases applies.
  bool defined() const;
};

/// r_1(n, b, chi; B) for basis images B = (X_1..X_n, S_1..S_b).
FreeWord build_r1(const StandardWordSpec& spec, const std::vector<FreeWord>& basis);

/// e(B, lambda) = X_1^{lambda_1} ... X_n^{lambda_n}; each lambda_i in 4Z_2.
FreeWord boundary_product(const std::vector<FreeWord>& basis, int n,
                          const std::vector<Int>& lambda);

/// Largest p^m with r in F^{p^m}[F,F] (0 when the power part vanishes);
/// throws unless r in F^p[F,F].
Int q_invariant(const FreeWord& r, int p);

struct CupForm {
  std::vector<std::vector<int>> matrix;  // entries mod p
  bool nondegenerate = false;
};

/// Mod-p cup form of the one-relator group F/<<r>> from the degree-2 data
/// of r; valid for r in F^p[F,F] nontrivial in G_2/G_3.
CupForm cup_form(const FreeWord& r, int p);

/// A pair (G, S): distinguished word s0 plus peripheral words s_1..s_b
/// (defaults to the designated generators).
struct PairPresentation {
  GeneratorSet gens;
  FreeWord s0;
  std::vector<FreeWord> peripherals;

  static PairPresentation make(GeneratorSet gens, FreeWord s0);
  static PairPresentation make(GeneratorSet gens, FreeWord s0,
                               std::vector<FreeWord> peripherals);
};

struct InitFailure {
  enum class Kind { HomologyObstruction, DegenerateForm, BoundExhausted };
  Kind kind;
  std::string reason;

  /// BoundExhausted is inconclusive; the obstructions are conclusive.
  bool conclusive() const { return kind != Kind::BoundExhausted; }
};

struct InitResult {
  std::vector<FreeWord> basis;  // X_1..X_n then rescaled S_1..S_b
};

/// Find a standard-form basis B with s0 = r_1(n,b,chi;B) mod G_3 and
/// zeta_i(s0) = 1: try the seed basis if given, then the identity basis,
/// then (rank <= 2, q != 0, within the search gate) exhaustive search over
/// G/G_3 images in canonical order.
std::variant<InitResult, InitFailure> initialize_mod3(
    const PairPresentation& pair, const OrientationCharacter& chi,
    const std::optional<std::vector<FreeWord>>& seed = std::nullopt);

}  // namespace propd2
