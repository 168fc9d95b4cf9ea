#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "allrel/dataset.hpp"
#include "allrel/forest.hpp"

namespace allrel {

struct AttributeImportance {
  // Mean decrease of out-of-bag accuracy over the trees using the attribute.
  double raw = 0.0;
  // Mean per-tree decrease over all trees divided by its standard error.
  // Trees not using the attribute contribute an exact zero decrease.
  double z = 0.0;
  std::size_t using_trees = 0;
  // False when the standard error is undefined (fewer than two using trees)
  // or zero; z is then reported as 0.
  bool z_defined = false;
};

struct ImportanceReport {
  std::vector<AttributeImportance> attributes;

  std::vector<double> z_scores() const;
  std::vector<double> raw_scores() const;
};

// Permutation (mean decrease accuracy) importance. For every tree and every
// attribute it splits on, the attribute is permuted among the tree's
// out-of-bag objects and the accuracy drop is recorded. Trees that never
// split on an attribute do not contribute to its raw score. With
// object_weights the accuracy of each tree is weighted per object.
ImportanceReport permutation_importance(const Forest& forest, const Dataset& data, std::uint64_t seed,
                                        std::span<const double> object_weights = {});

}  // namespace allrel
