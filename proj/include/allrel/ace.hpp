#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "allrel/dataset.hpp"
#include "allrel/forest.hpp"
#include "allrel/selection.hpp"

namespace allrel {

struct AceConfig {
  std::size_t replicates = 20;
  // Quantile of shadow z-scores used as the per-replicate contrast threshold.
  double quantile = 0.75;
  double alpha = 0.05;
  std::size_t max_stages = 10;
  ForestConfig forest;
  std::uint64_t seed = 0;
  // Added to every object's out-of-bag misclassification rate when the
  // effect of found attributes is removed, so no object drops out entirely.
  double weight_floor = 0.2;
  // Stop after the first stage that ends past this many seconds; 0 = never.
  double time_budget_seconds = 0.0;

  void validate() const;
};

// Linear-interpolation sample quantile (the common "type 7" definition).
double sample_quantile(std::vector<double> values, double q);

// Exact one-sided sign test: true when the positive differences are
// significantly more frequent than the negative ones at `level`. Zero
// differences are dropped.
bool sign_test_positive(std::span<const double> differences, double level);

// One stage: `config.replicates` forests on freshly shadowed data (objects
// drawn and scored by `object_weights` when given). Returns candidates not in
// `already_found` whose replicate z-scores beat the replicate contrast
// threshold significantly, Bonferroni-corrected over the candidates.
// Indices refer to `data`; `stage` selects the random streams.
std::vector<std::size_t> ace_stage(const Dataset& data, std::span<const std::size_t> already_found,
                                   const AceConfig& config, std::span<const double> object_weights = {},
                                   std::size_t stage = 1);

// Stages repeat until one finds nothing new or max_stages is reached. After
// each productive stage the objects are reweighted by how often a forest on
// the found attributes alone misclassifies them out-of-bag. Later stages
// sample and score importance by these weights.
SelectionResult run_ace(const Dataset& data, const AceConfig& config);

}  // namespace allrel
