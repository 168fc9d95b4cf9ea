#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "allrel/dataset.hpp"

namespace allrel {

enum class SelectionStatus { Confirmed, Rejected, Tentative };

std::string_view to_string(SelectionStatus status);

struct AttributeOutcome {
  std::string name;
  Origin origin = Origin::Original;
  SelectionStatus status = SelectionStatus::Tentative;
  std::size_t hits = 0;
  // Iteration (Boruta) or stage (ACE) of the decision; 0 when never decided.
  std::size_t decided_at = 0;
  // Means over the iterations the attribute took part in.
  double mean_z = 0.0;
  double mean_raw = 0.0;
};

struct IterationRecord {
  // Contrast reference of the iteration: the maximal shadow z-score for
  // Boruta, the mean quantile threshold for an ACE stage.
  double shadow_reference = 0.0;
  double shadow_min = 0.0;
  double shadow_mean = 0.0;
  double shadow_max = 0.0;
  // z-score per candidate attribute; NaN where the attribute was not in play.
  std::vector<double> z;
};

// Outcome of an all-relevant wrapper. Only candidate attributes of the input
// appear here, never the internal contrast attributes.
struct SelectionResult {
  std::string algorithm;
  std::vector<AttributeOutcome> attributes;
  std::size_t iterations = 0;
  bool converged = true;
  std::vector<IterationRecord> history;
  // Resolved parameters echoed for reproducibility.
  std::vector<std::pair<std::string, double>> parameters;

  std::vector<std::string> names_with(SelectionStatus status) const;
  std::size_t count(SelectionStatus status) const;
};

// Copy of `data` restricted to `attributes`, all retagged Original so that
// wrappers shadow every candidate. Throws InputError if any is a Shadow.
Dataset as_candidates(const Dataset& data, std::span<const std::size_t> attributes);

// Candidate attributes of `data`: everything that is not a Shadow.
std::vector<std::size_t> candidate_attributes(const Dataset& data);

}  // namespace allrel
