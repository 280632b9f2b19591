#include "propd2/words.hpp"

namespace propd2 {

FreeWord FreeWord::reduce(GeneratorSet gens, const std::vector<Letter>& raw) {
  FreeWord w(gens);
  for (const Letter& l : raw) {
    if (l.gen < 1 || l.gen > gens.rank())
      throw WordError("generator index out of range: " + std::to_string(l.gen));
    if (l.exp == 0) continue;
    if (!w.letters_.empty() && w.letters_.back().gen == l.gen) {
      w.letters_.back().exp += l.exp;
      if (w.letters_.back().exp == 0) w.letters_.pop_back();
    } else {
      w.letters_.push_back(l);
    }
  }
  return w;
}

FreeWord FreeWord::generator(GeneratorSet gens, int gen, Int exp) {
  return reduce(gens, {{gen, exp}});
}

Int FreeWord::length() const {
  Int len = 0;
  for (const Letter& l : letters_) len += abs(l.exp);
  return len;
}

FreeWord multiply(const FreeWord& a, const FreeWord& b) {
  if (!(a.gens() == b.gens())) throw WordError("mismatched generator sets");
  std::vector<Letter> raw = a.letters_;
  // concatenation re-reduces only at the seam, but reduce() handles it all
  raw.insert(raw.end(), b.letters_.begin(), b.letters_.end());
  // reduce() is linear but does not cancel across merged-then-deleted pairs;
  // iterate with an explicit stack instead.
  FreeWord w(a.gens());
  for (const Letter& l : raw) {
    if (!w.letters_.empty() && w.letters_.back().gen == l.gen) {
      w.letters_.back().exp += l.exp;
      if (w.letters_.back().exp == 0) w.letters_.pop_back();
    } else {
      w.letters_.push_back(l);
    }
  }
  return w;
}

FreeWord invert(const FreeWord& a) {
  FreeWord w(a.gens());
  for (auto it = a.letters_.rbegin(); it != a.letters_.rend(); ++it)
    w.letters_.push_back({it->gen, -it->exp});
  return w;
}

FreeWord commutator(const FreeWord& u, const FreeWord& v) {
  return multiply(multiply(invert(u), invert(v)), multiply(u, v));
}

FreeWord power(const FreeWord& a, const Int& k) {
  if (k == 0) return FreeWord(a.gens());
  if (k < 0) return power(invert(a), -k);
  if (a.letters().size() == 1) {
    return FreeWord::generator(a.gens(), a.letters()[0].gen, a.letters()[0].exp * k);
  }
  FreeWord r(a.gens());
  FreeWord base = a;
  Int e = k;
  while (e > 0) {
    if ((e & 1) != 0) r = multiply(r, base);
    e >>= 1;
    if (e > 0) base = multiply(base, base);
  }
  return r;
}

FreeWord conjugate(const FreeWord& u, const FreeWord& v) {
  return multiply(multiply(invert(v), u), v);
}

FreeWord apply_endomorphism(const FreeWord& w, const std::vector<FreeWord>& images) {
  if (static_cast<int>(images.size()) != w.gens().rank())
    throw WordError("apply_endomorphism: one image per generator required");
  FreeWord r(images.empty() ? w.gens() : images[0].gens());
  for (const Letter& l : w.letters())
    r = multiply(r, power(images[l.gen - 1], l.exp));
  return r;
}

std::vector<FreeWord> identity_images(GeneratorSet gens) {
  std::vector<FreeWord> v;
  v.reserve(gens.rank());
  for (int i = 1; i <= gens.rank(); ++i) v.push_back(FreeWord::generator(gens, i));
  return v;
}

}  // namespace propd2
