#include "allrel/boruta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "allrel/binomial.hpp"
#include "allrel/contrast.hpp"
#include "allrel/error.hpp"
#include "allrel/importance.hpp"
#include "allrel/rng.hpp"

namespace allrel {

void BorutaConfig::validate() const {
  if (max_runs < 3) throw ConfigError("maxRuns must be at least 3");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (forest.num_trees < 1) throw ConfigError("numTrees must be at least 1");
}

std::vector<bool> hit_test(std::span<const double> importances, double shadow_max) {
  std::vector<bool> hits(importances.size());
  std::transform(importances.begin(), importances.end(), hits.begin(), [shadow_max](double v) { return v > shadow_max; });
  return hits;
}

Decision binomial_decision(std::size_t hits, std::size_t trials, double alpha, std::size_t undecided) {
  if (hits > trials) throw InputError("hit count exceeds the number of trials");
  if (trials < 1) throw InputError("binomial decision needs at least one trial");
  if (undecided < 1) throw InputError("undecided count must be at least 1");
  const double level = alpha / static_cast<double>(undecided);
  if (binomial_upper_tail(trials, hits) < level) return Decision::Confirm;
  if (binomial_lower_tail(trials, hits) < level) return Decision::Reject;
  return Decision::Undecided;
}

SelectionResult run_boruta(const Dataset& data, const BorutaConfig& config) {
  config.validate();
  const auto candidates = candidate_attributes(data);
  data.validate_for_training();
  const std::size_t n = candidates.size();

  SelectionResult result;
  result.algorithm = "boruta";
  result.parameters = {{"maxRuns", static_cast<double>(config.max_runs)},
                       {"alpha", config.alpha},
                       {"numTrees", static_cast<double>(config.forest.num_trees)},
                       {"mtry", static_cast<double>(config.forest.mtry)},
                       {"minNodeSize", static_cast<double>(config.forest.min_node_size)}};
  result.attributes.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    result.attributes[i].name = data.meta(candidates[i]).name;
    result.attributes[i].origin = data.meta(candidates[i]).origin;
  }

  std::vector<bool> undecided(n, true);
  std::vector<std::size_t> appearances(n, 0);
  std::vector<double> sum_z(n, 0.0), sum_raw(n, 0.0);

  for (std::size_t iteration = 1; iteration <= config.max_runs; ++iteration) {
    if (std::none_of(undecided.begin(), undecided.end(), [](bool u) { return u; })) break;

    // Undecided and Confirmed attributes stay in play; Rejected ones leave.
    std::vector<std::size_t> active;
    std::vector<std::size_t> active_columns;
    for (std::size_t i = 0; i < n; ++i) {
      if (undecided[i] || result.attributes[i].status == SelectionStatus::Confirmed) {
        active.push_back(i);
        active_columns.push_back(candidates[i]);
      }
    }
    const Dataset extended =
        add_shadow_attributes(as_candidates(data, active_columns), derive_seed(config.seed, iteration, 1));

    ForestConfig forest_config = config.forest;
    forest_config.seed = derive_seed(config.seed, iteration, 2);
    if (forest_config.mtry > extended.n_attributes()) forest_config.mtry = extended.n_attributes();
    const Forest forest = train_forest(extended, forest_config);
    const ImportanceReport importance = permutation_importance(forest, extended, derive_seed(config.seed, iteration, 3));

    IterationRecord record;
    record.z.assign(n, std::numeric_limits<double>::quiet_NaN());
    double shadow_max = -std::numeric_limits<double>::infinity();
    double shadow_min = std::numeric_limits<double>::infinity();
    double shadow_sum = 0.0;
    for (std::size_t j = active.size(); j < extended.n_attributes(); ++j) {
      const double z = importance.attributes[j].z;
      shadow_max = std::max(shadow_max, z);
      shadow_min = std::min(shadow_min, z);
      shadow_sum += z;
    }
    record.shadow_reference = record.shadow_max = shadow_max;
    record.shadow_min = shadow_min;
    record.shadow_mean = shadow_sum / static_cast<double>(extended.n_attributes() - active.size());

    std::vector<double> z(active.size());
    for (std::size_t k = 0; k < active.size(); ++k) {
      const std::size_t i = active[k];
      z[k] = importance.attributes[k].z;
      record.z[i] = z[k];
      ++appearances[i];
      sum_z[i] += z[k];
      sum_raw[i] += importance.attributes[k].raw;
    }
    const auto hits = hit_test(z, shadow_max);
    for (std::size_t k = 0; k < active.size(); ++k) {
      if (undecided[active[k]] && hits[k]) ++result.attributes[active[k]].hits;
    }
    result.history.push_back(std::move(record));
    result.iterations = iteration;

    if (iteration < kFirstDecisionIteration) continue;
    const auto open = static_cast<std::size_t>(std::count(undecided.begin(), undecided.end(), true));
    for (std::size_t i = 0; i < n; ++i) {
      if (!undecided[i]) continue;
      const Decision decision = binomial_decision(result.attributes[i].hits, iteration, config.alpha, open);
      if (decision == Decision::Undecided) continue;
      undecided[i] = false;
      result.attributes[i].status = decision == Decision::Confirm ? SelectionStatus::Confirmed : SelectionStatus::Rejected;
      result.attributes[i].decided_at = iteration;
    }
  }

  result.converged = std::none_of(undecided.begin(), undecided.end(), [](bool u) { return u; });
  for (std::size_t i = 0; i < n; ++i) {
    if (appearances[i] == 0) continue;
    result.attributes[i].mean_z = sum_z[i] / static_cast<double>(appearances[i]);
    result.attributes[i].mean_raw = sum_raw[i] / static_cast<double>(appearances[i]);
  }
  return result;
}

}  // namespace allrel
