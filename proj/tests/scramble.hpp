#pragma once

#include <random>

#include "propd2/standard_words.hpp"

namespace propd2::testutil {

/// Random composition of pair-structure-preserving automorphisms: inner
/// automorphisms, transvections x_i -> x_i . w (w avoiding x_i), and
/// per-peripheral conjugations.  Returns the generator images.
inline std::vector<FreeWord> random_scramble(const GeneratorSet& g, std::mt19937& rng,
                                             int moves = 6) {
  auto images = identity_images(g);
  int rank = g.rank();
  auto rand_word = [&](int avoid) {
    FreeWord w(g);
    int len = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < len; ++i) {
      int gen = 1 + static_cast<int>(rng() % rank);
      if (gen == avoid) gen = gen % rank + 1;
      if (gen == avoid) continue;
      int e = 1 + static_cast<int>(rng() % 2);
      if (rng() % 2) e = -e;
      w = multiply(w, FreeWord::generator(g, gen, e));
    }
    return w;
  };
  auto compose = [&](const std::vector<FreeWord>& phi) {
    for (auto& im : images) im = apply_endomorphism(im, phi);
  };
  for (int m = 0; m < moves; ++m) {
    int kind = static_cast<int>(rng() % 3);
    auto phi = identity_images(g);
    if (kind == 0) {
      auto c = rand_word(0);
      for (int i = 0; i < rank; ++i) phi[i] = conjugate(phi[i], c);
    } else if (kind == 1 && g.n > 0) {
      int i = static_cast<int>(rng() % g.n);
      phi[i] = multiply(phi[i], rand_word(i + 1));
    } else if (g.b > 0) {
      int i = g.n + static_cast<int>(rng() % g.b);
      phi[i] = conjugate(phi[i], rand_word(0));
    }
    compose(phi);
  }
  return images;
}

}  // namespace propd2::testutil
