#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "allrel/ace.hpp"
#include "allrel/boruta.hpp"
#include "allrel/datagen.hpp"
#include "allrel/dataset.hpp"
#include "allrel/importance.hpp"

namespace allrel {

enum class Algorithm { Top, Boruta, Ace };

std::string_view to_string(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(std::string_view name);

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f_score = 0.0;
};

// Fills the ratios from the counts; each ratio is 0 when its denominator is.
ConfusionCounts confusion_from_counts(std::size_t tp, std::size_t fp, std::size_t fn);

// Scores a selection against the known relevant set. Throws InputError when
// either set leaves the universe.
ConfusionCounts score_selection(std::span<const std::string> selected, std::span<const std::string> truth,
                                std::span<const std::string> universe);

// The n attributes with the highest z-score, ties to the lower index.
// Returned indices are sorted ascending.
std::vector<std::size_t> top_n_reference(const ImportanceReport& report, std::size_t n);

struct BenchmarkRecord {
  std::string experiment;  // "grid", "semisynth", "sweep" or "sweep-control"
  std::size_t n_objects = 0;
  std::size_t n_attributes = 0;
  std::string base_set;
  std::size_t num_trees = 0;
  Algorithm algorithm = Algorithm::Boruta;
  std::size_t repetition = 0;
  ConfusionCounts counts;
  std::vector<std::string> selected;
  std::size_t tentative = 0;
  // Artificial (noise or permuted-copy) attributes declared relevant.
  std::size_t certain_false_positives = 0;
  // Semi-synthetic: originals confirmed both here and in the base-set run.
  std::size_t retained_original = 0;
  std::size_t base_confirmed = 0;
  double wall_clock_seconds = 0.0;
  std::uint64_t seed = 0;
};

struct BenchSettings {
  std::uint64_t seed = 0;
  std::size_t top_n = kXorRelevant;
  // Forest behind the Top reference.
  ForestConfig forest;
  BorutaConfig boruta;
  AceConfig ace;
};

std::vector<BenchmarkRecord> run_synthetic_grid(std::span<const GridCell> cells, std::span<const Algorithm> algorithms,
                                                std::size_t repetitions, const BenchSettings& settings);

// Boruta on noise-extended copies of `base`, scored against Boruta's own
// selection on the unextended set for the same repetition.
std::vector<BenchmarkRecord> run_semisynthetic(const Dataset& base, std::string_view base_name,
                                               std::span<const std::size_t> target_totals, std::size_t repetitions,
                                               const BenchSettings& settings);

// Boruta at increasing forest sizes; with a control, also on the data
// extended by `control_count` permuted copies.
std::vector<BenchmarkRecord> run_tree_sweep(const Dataset& data, std::string_view base_name,
                                            std::span<const std::size_t> tree_counts, std::size_t repetitions,
                                            bool with_control, const BenchSettings& settings,
                                            std::size_t control_count = 1000);

struct CellSummary {
  std::string experiment;
  std::size_t n_objects = 0;
  std::size_t n_attributes = 0;
  std::string base_set;
  std::size_t num_trees = 0;
  Algorithm algorithm = Algorithm::Boruta;
  std::size_t repetitions = 0;
  double mean_tp = 0.0;
  double mean_fp = 0.0;
  double mean_fn = 0.0;
  double mean_f = 0.0;
  double sd_f = 0.0;
  double mean_selected = 0.0;
  double mean_certain_false_positives = 0.0;
  double mean_retained_original = 0.0;
  double mean_seconds = 0.0;
};

// Means over repetitions per (experiment, cell, algorithm), in first-seen order.
std::vector<CellSummary> summarize(std::span<const BenchmarkRecord> records);

// Grid summaries ordered from easiest to hardest: by Top F-score, then by
// Boruta F-score, both descending.
std::vector<GridCell> difficulty_ranking(std::span<const CellSummary> summaries);

}  // namespace allrel
