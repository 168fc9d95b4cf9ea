#include "allrel/ace.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "allrel/binomial.hpp"
#include "allrel/contrast.hpp"
#include "allrel/error.hpp"
#include "allrel/importance.hpp"
#include "allrel/rng.hpp"

namespace allrel {

void AceConfig::validate() const {
  if (replicates < 2) throw ConfigError("ACE needs at least 2 replicates");
  if (!(quantile > 0.0 && quantile < 1.0)) throw ConfigError("quantile must lie in (0, 1)");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (max_stages < 1) throw ConfigError("maxStages must be at least 1");
  if (!(weight_floor > 0.0)) throw ConfigError("weight floor must be positive");
  if (forest.num_trees < 1) throw ConfigError("numTrees must be at least 1");
}

double sample_quantile(std::vector<double> values, double q) {
  if (values.empty()) throw InputError("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double h = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

bool sign_test_positive(std::span<const double> differences, double level) {
  std::size_t positive = 0;
  std::size_t nonzero = 0;
  for (double d : differences) {
    if (d == 0.0) continue;
    ++nonzero;
    if (d > 0.0) ++positive;
  }
  if (nonzero == 0) return false;
  return binomial_upper_tail(nonzero, positive) < level;
}

namespace {

struct StageOutcome {
  std::vector<std::size_t> found;
  IterationRecord record;
  std::vector<double> mean_raw;
};

StageOutcome run_stage(const Dataset& data, std::span<const std::size_t> already_found, const AceConfig& config,
                       std::span<const double> object_weights, std::size_t stage) {
  config.validate();
  const auto candidates = candidate_attributes(data);
  const std::size_t n = candidates.size();
  const Dataset base = as_candidates(data, candidates);

  // differences[i][r]: z-score of candidate i minus the replicate threshold.
  std::vector<std::vector<double>> differences(n, std::vector<double>(config.replicates));
  std::vector<double> sum_z(n, 0.0), sum_raw(n, 0.0);
  StageOutcome outcome;
  double threshold_sum = 0.0;
  outcome.record.shadow_min = std::numeric_limits<double>::infinity();
  outcome.record.shadow_max = -std::numeric_limits<double>::infinity();
  double shadow_sum = 0.0;
  std::size_t shadow_count = 0;

  for (std::size_t r = 0; r < config.replicates; ++r) {
    const Dataset extended = add_shadow_attributes(base, derive_seed(config.seed, stage, r, 1));
    ForestConfig forest_config = config.forest;
    forest_config.seed = derive_seed(config.seed, stage, r, 2);
    if (forest_config.mtry > extended.n_attributes()) forest_config.mtry = extended.n_attributes();
    const Forest forest = train_forest(extended, forest_config, object_weights);
    const ImportanceReport importance =
        permutation_importance(forest, extended, derive_seed(config.seed, stage, r, 3), object_weights);

    std::vector<double> shadows;
    for (std::size_t j = n; j < extended.n_attributes(); ++j) shadows.push_back(importance.attributes[j].z);
    for (double s : shadows) {
      outcome.record.shadow_min = std::min(outcome.record.shadow_min, s);
      outcome.record.shadow_max = std::max(outcome.record.shadow_max, s);
      shadow_sum += s;
    }
    shadow_count += shadows.size();
    const double threshold = sample_quantile(std::move(shadows), config.quantile);
    threshold_sum += threshold;
    for (std::size_t i = 0; i < n; ++i) {
      differences[i][r] = importance.attributes[i].z - threshold;
      sum_z[i] += importance.attributes[i].z;
      sum_raw[i] += importance.attributes[i].raw;
    }
  }

  const auto reps = static_cast<double>(config.replicates);
  outcome.record.shadow_reference = threshold_sum / reps;
  outcome.record.shadow_mean = shadow_sum / static_cast<double>(shadow_count);
  outcome.record.z.resize(n);
  outcome.mean_raw.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    outcome.record.z[i] = sum_z[i] / reps;
    outcome.mean_raw[i] = sum_raw[i] / reps;
  }

  std::vector<bool> excluded(n, false);
  for (std::size_t f : already_found) {
    if (f >= n) throw InputError("already-found attribute index out of range");
    excluded[f] = true;
  }
  const auto open = static_cast<std::size_t>(std::count(excluded.begin(), excluded.end(), false));
  if (open == 0) return outcome;
  const double level = config.alpha / static_cast<double>(open);
  for (std::size_t i = 0; i < n; ++i) {
    if (!excluded[i] && sign_test_positive(differences[i], level)) outcome.found.push_back(i);
  }
  return outcome;
}

}  // namespace

std::vector<std::size_t> ace_stage(const Dataset& data, std::span<const std::size_t> already_found,
                                   const AceConfig& config, std::span<const double> object_weights, std::size_t stage) {
  return run_stage(data, already_found, config, object_weights, stage).found;
}

SelectionResult run_ace(const Dataset& data, const AceConfig& config) {
  config.validate();
  const auto candidates = candidate_attributes(data);
  data.validate_for_training();
  const std::size_t n = candidates.size();
  const auto started = std::chrono::steady_clock::now();

  SelectionResult result;
  result.algorithm = "ace";
  result.parameters = {{"replicates", static_cast<double>(config.replicates)},
                       {"quantile", config.quantile},
                       {"alpha", config.alpha},
                       {"maxStages", static_cast<double>(config.max_stages)},
                       {"numTrees", static_cast<double>(config.forest.num_trees)},
                       {"mtry", static_cast<double>(config.forest.mtry)},
                       {"minNodeSize", static_cast<double>(config.forest.min_node_size)},
                       {"weightFloor", config.weight_floor},
                       {"timeBudgetSeconds", config.time_budget_seconds}};
  result.attributes.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    result.attributes[i].name = data.meta(candidates[i]).name;
    result.attributes[i].origin = data.meta(candidates[i]).origin;
    result.attributes[i].status = SelectionStatus::Rejected;
  }

  std::vector<std::size_t> found;
  std::vector<double> weights;
  std::vector<double> sum_z(n, 0.0), sum_raw(n, 0.0);
  result.converged = false;
  for (std::size_t stage = 1; stage <= config.max_stages; ++stage) {
    StageOutcome outcome = run_stage(data, found, config, weights, stage);
    result.iterations = stage;
    for (std::size_t i = 0; i < n; ++i) {
      sum_z[i] += outcome.record.z[i];
      sum_raw[i] += outcome.mean_raw[i];
    }
    result.history.push_back(std::move(outcome.record));
    if (outcome.found.empty()) {
      result.converged = true;
      break;
    }
    for (std::size_t i : outcome.found) {
      result.attributes[i].status = SelectionStatus::Confirmed;
      result.attributes[i].decided_at = stage;
      found.push_back(i);
    }
    std::sort(found.begin(), found.end());
    if (stage == config.max_stages) break;
    if (config.time_budget_seconds > 0.0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count() >
            config.time_budget_seconds) {
      break;
    }

    // Remove the effect of the found attributes: objects they cannot explain
    // dominate the next stage's bootstrap samples.
    std::vector<std::size_t> found_columns;
    for (std::size_t i : found) found_columns.push_back(candidates[i]);
    const Dataset explained = as_candidates(data, found_columns);
    ForestConfig forest_config = config.forest;
    forest_config.seed = derive_seed(config.seed, stage, 0xACE);
    forest_config.mtry = std::min(forest_config.mtry, explained.n_attributes());
    const Forest forest = train_forest(explained, forest_config);
    weights = oob_misclassification_rate(forest, explained);
    for (double& w : weights) w += config.weight_floor;
  }

  for (std::size_t i = 0; i < n; ++i) {
    result.attributes[i].mean_z = sum_z[i] / static_cast<double>(result.iterations);
    result.attributes[i].mean_raw = sum_raw[i] / static_cast<double>(result.iterations);
  }
  return result;
}

}  // namespace allrel
