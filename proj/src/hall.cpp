#include "propd2/hall.hpp"

namespace propd2 {

HallBasis::HallBasis(int rank, int max_weight) : rank_(rank), max_weight_(max_weight) {
  if (rank < 1) throw WordError("HallBasis requires rank >= 1");
  if (max_weight < 1) throw WordError("HallBasis requires max_weight >= 1");
  for (int g = 1; g <= rank; ++g) {
    BasicCommutator c;
    c.weight = 1;
    c.gen = g;
    entries_.push_back(c);
  }
  for (int w = 2; w <= max_weight; ++w) {
    int have = size();
    for (int l = 0; l < have; ++l) {
      for (int r = 0; r < l; ++r) {
        if (entries_[l].weight + entries_[r].weight != w) continue;
        // Hall condition: for l = [a,b], require b <= r.
        if (!entries_[l].is_generator() && entries_[l].right > r) continue;
        BasicCommutator c;
        c.weight = w;
        c.left = l;
        c.right = r;
        def_index_[{l, r}] = size();
        entries_.push_back(c);
      }
    }
  }
  dims_.assign(max_weight, 0);
  for (const auto& e : entries_) dims_[e.weight - 1]++;
}

std::optional<int> HallBasis::definition(int l, int r) const {
  auto it = def_index_.find({l, r});
  if (it == def_index_.end()) return std::nullopt;
  return it->second;
}

int HallBasis::count_up_to(int w) const {
  int total = 0;
  for (int i = 1; i <= w && i <= max_weight_; ++i) total += dims_[i - 1];
  return total;
}

FreeWord HallBasis::word(int i, const GeneratorSet& gens) const {
  const BasicCommutator& c = entries_[i];
  if (c.is_generator()) return FreeWord::generator(gens, c.gen);
  return commutator(word(c.left, gens), word(c.right, gens));
}

}  // namespace propd2
