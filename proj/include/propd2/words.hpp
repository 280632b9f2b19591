#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace propd2 {

using Int = boost::multiprecision::cpp_int;

struct WordError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A free generating set split into n internal generators x_1..x_n and b
/// peripheral generators s_1..s_b.  Generators are indexed 1..n then
/// n+1..n+b; every module relies on this fixed ordering.
struct GeneratorSet {
  int n = 0;
  int b = 0;

  GeneratorSet() = default;
  GeneratorSet(int n_, int b_) : n(n_), b(b_) {
    if (n < 0 || b < 0 || n + b < 1)
      throw WordError("GeneratorSet requires n >= 0, b >= 0, n+b >= 1");
  }

  int rank() const { return n + b; }
  bool is_peripheral(int gen) const { return gen > n; }
  bool operator==(const GeneratorSet&) const = default;
};

struct Letter {
  int gen = 0;  // 1-based generator index
  Int exp = 0;
};

inline bool operator==(const Letter& a, const Letter& b) {
  return a.gen == b.gen && a.exp == b.exp;
}

/// A freely reduced word over a GeneratorSet.  Adjacent letters always have
/// distinct generator indices and nonzero exponents; the empty word is the
/// identity.
class FreeWord {
 public:
  FreeWord() = default;
  explicit FreeWord(GeneratorSet gens) : gens_(gens) {}

  /// Canonical free reduction of a raw letter list.
  static FreeWord reduce(GeneratorSet gens, const std::vector<Letter>& raw);

  /// Convenience: single generator power.
  static FreeWord generator(GeneratorSet gens, int gen, Int exp = 1);

  const GeneratorSet& gens() const { return gens_; }
  const std::vector<Letter>& letters() const { return letters_; }
  bool is_identity() const { return letters_.empty(); }
  Int length() const;  // sum of |exponents|

  bool operator==(const FreeWord& o) const {
    return gens_ == o.gens_ && letters_ == o.letters_;
  }

 private:
  GeneratorSet gens_;
  std::vector<Letter> letters_;  // invariant: freely reduced

  friend FreeWord multiply(const FreeWord&, const FreeWord&);
  friend FreeWord invert(const FreeWord&);
};

FreeWord multiply(const FreeWord& a, const FreeWord& b);
FreeWord invert(const FreeWord& a);
/// [u,v] = u^{-1} v^{-1} u v.
FreeWord commutator(const FreeWord& u, const FreeWord& v);
FreeWord power(const FreeWord& a, const Int& k);
/// Conjugate u^v = v^{-1} u v.
FreeWord conjugate(const FreeWord& u, const FreeWord& v);

/// Apply the endomorphism sending generator i to images[i-1].
FreeWord apply_endomorphism(const FreeWord& w, const std::vector<FreeWord>& images);

std::vector<FreeWord> identity_images(GeneratorSet gens);

}  // namespace propd2
