#pragma once

#include <map>
#include <optional>
#include <vector>

#include "propd2/words.hpp"

namespace propd2 {

/// A basic commutator: either a generator (gen >= 1) or a bracket
/// [entry(left), entry(right)] of earlier entries with left > right.
struct BasicCommutator {
  int weight = 1;
  int gen = 0;    // 1-based generator index when this is a weight-1 entry
  int left = -1;  // indices into HallBasis::entries for composite entries
  int right = -1;

  bool is_generator() const { return gen != 0; }
};

/// The Hall set of basic commutators of weight <= max_weight on `rank`
/// generators, in weight-lexicographic order.  Entry indices are 0-based and
/// increase with (weight, creation order); this order is the collection
/// order used everywhere.
class HallBasis {
 public:
  HallBasis(int rank, int max_weight);

  int rank() const { return rank_; }
  int max_weight() const { return max_weight_; }
  int size() const { return static_cast<int>(entries_.size()); }
  const BasicCommutator& entry(int i) const { return entries_[i]; }
  const std::vector<BasicCommutator>& entries() const { return entries_; }
  int weight(int i) const { return entries_[i].weight; }

  /// Index of the basis element [entry(l), entry(r)], if it is one.
  std::optional<int> definition(int l, int r) const;

  /// Number of entries of each weight 1..max_weight.
  const std::vector<int>& dims() const { return dims_; }
  /// Number of entries of weight <= w.
  int count_up_to(int w) const;

  /// The entry expanded as a word in the generators.
  FreeWord word(int i, const GeneratorSet& gens) const;

 private:
  int rank_;
  int max_weight_;
  std::vector<BasicCommutator> entries_;
  std::vector<int> dims_;
  std::map<std::pair<int, int>, int> def_index_;
};

}  // namespace propd2
