#include "allrel/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "allrel/contrast.hpp"
#include "allrel/error.hpp"
#include "allrel/rng.hpp"

namespace allrel {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::Top: return "top";
    case Algorithm::Boruta: return "boruta";
    case Algorithm::Ace: return "ace";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "top") return Algorithm::Top;
  if (name == "boruta") return Algorithm::Boruta;
  if (name == "ace") return Algorithm::Ace;
  return std::nullopt;
}

ConfusionCounts confusion_from_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
  ConfusionCounts c{tp, fp, fn, 0.0, 0.0, 0.0};
  if (tp + fp > 0) c.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  if (tp + fn > 0) c.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  if (c.precision + c.recall > 0.0) c.f_score = 2.0 * c.precision * c.recall / (c.precision + c.recall);
  return c;
}

ConfusionCounts score_selection(std::span<const std::string> selected, std::span<const std::string> truth,
                                std::span<const std::string> universe) {
  const std::set<std::string> all(universe.begin(), universe.end());
  const std::set<std::string> chosen(selected.begin(), selected.end());
  const std::set<std::string> relevant(truth.begin(), truth.end());
  for (const auto& s : chosen) {
    if (!all.contains(s)) throw InputError("selected attribute '" + s + "' is not in the universe");
  }
  for (const auto& t : relevant) {
    if (!all.contains(t)) throw InputError("relevant attribute '" + t + "' is not in the universe");
  }
  std::size_t tp = 0;
  for (const auto& s : chosen) tp += relevant.contains(s) ? 1 : 0;
  return confusion_from_counts(tp, chosen.size() - tp, relevant.size() - tp);
}

std::vector<std::size_t> top_n_reference(const ImportanceReport& report, std::size_t n) {
  const std::size_t p = report.attributes.size();
  if (n > p) throw InputError("cannot select top " + std::to_string(n) + " of " + std::to_string(p) + " attributes");
  std::vector<std::size_t> order(p);
  for (std::size_t i = 0; i < p; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return report.attributes[a].z > report.attributes[b].z; });
  order.resize(n);
  std::sort(order.begin(), order.end());
  return order;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<std::string> names_with_relevance(const Dataset& data, Relevance relevance) {
  std::vector<std::string> out;
  for (std::size_t j = 0; j < data.n_attributes(); ++j) {
    if (data.meta(j).relevance == relevance) out.push_back(data.meta(j).name);
  }
  return out;
}

std::vector<std::string> all_names(const Dataset& data) {
  std::vector<std::string> out;
  for (std::size_t j = 0; j < data.n_attributes(); ++j) out.push_back(data.meta(j).name);
  return out;
}

std::size_t count_artificial(const Dataset& data, std::span<const std::string> selected) {
  std::size_t count = 0;
  for (const auto& name : selected) {
    const auto j = data.find(name);
    if (j && (data.meta(*j).origin == Origin::Noise || data.meta(*j).origin == Origin::PermutedCopy)) ++count;
  }
  return count;
}

struct SelectionRun {
  std::vector<std::string> selected;
  std::size_t tentative = 0;
  double seconds = 0.0;
};

SelectionRun run_algorithm(Algorithm algorithm, const Dataset& data, const BenchSettings& settings,
                           std::uint64_t seed, std::optional<std::size_t> num_trees = std::nullopt) {
  const auto start = Clock::now();
  SelectionRun run;
  switch (algorithm) {
    case Algorithm::Top: {
      ForestConfig config = settings.forest;
      if (num_trees) config.num_trees = *num_trees;
      config.seed = derive_seed(seed, 1);
      const Forest forest = train_forest(data, config);
      const auto report = permutation_importance(forest, data, derive_seed(seed, 2));
      for (std::size_t j : top_n_reference(report, std::min(settings.top_n, data.n_attributes()))) {
        run.selected.push_back(data.meta(j).name);
      }
      break;
    }
    case Algorithm::Boruta: {
      BorutaConfig config = settings.boruta;
      if (num_trees) config.forest.num_trees = *num_trees;
      config.seed = seed;
      const auto result = run_boruta(data, config);
      run.selected = result.names_with(SelectionStatus::Confirmed);
      run.tentative = result.count(SelectionStatus::Tentative);
      break;
    }
    case Algorithm::Ace: {
      AceConfig config = settings.ace;
      if (num_trees) config.forest.num_trees = *num_trees;
      config.seed = seed;
      const auto result = run_ace(data, config);
      run.selected = result.names_with(SelectionStatus::Confirmed);
      break;
    }
  }
  run.seconds = seconds_since(start);
  return run;
}

}  // namespace

std::vector<BenchmarkRecord> run_synthetic_grid(std::span<const GridCell> cells, std::span<const Algorithm> algorithms,
                                                std::size_t repetitions, const BenchSettings& settings) {
  if (algorithms.empty()) throw ConfigError("no algorithms requested");
  const auto grid = grid_sizes();
  for (const GridCell& cell : cells) {
    if (std::find(grid.begin(), grid.end(), cell) == grid.end()) {
      throw ConfigError("cell " + std::to_string(cell.n_objects) + "x" + std::to_string(cell.n_attributes) +
                        " is not part of the benchmark grid");
    }
  }
  std::vector<BenchmarkRecord> records;
  for (const GridCell& cell : cells) {
    for (std::size_t rep = 0; rep < repetitions; ++rep) {
      const std::uint64_t data_seed = derive_seed(settings.seed, cell.n_objects, cell.n_attributes, rep);
      const Dataset data = generate_xor_set(cell.n_objects, cell.n_attributes, data_seed);
      const auto truth = names_with_relevance(data, Relevance::Relevant);
      const auto universe = all_names(data);
      for (Algorithm algorithm : algorithms) {
        const std::uint64_t seed = derive_seed(data_seed, static_cast<std::uint64_t>(algorithm) + 1);
        SelectionRun run = run_algorithm(algorithm, data, settings, seed);
        BenchmarkRecord record;
        record.experiment = "grid";
        record.n_objects = cell.n_objects;
        record.n_attributes = cell.n_attributes;
        record.base_set = "xor";
        record.num_trees = algorithm == Algorithm::Top      ? settings.forest.num_trees
                           : algorithm == Algorithm::Boruta ? settings.boruta.forest.num_trees
                                                            : settings.ace.forest.num_trees;
        record.algorithm = algorithm;
        record.repetition = rep;
        record.counts = score_selection(run.selected, truth, universe);
        record.selected = std::move(run.selected);
        record.tentative = run.tentative;
        record.wall_clock_seconds = run.seconds;
        record.seed = seed;
        records.push_back(std::move(record));
      }
    }
  }
  return records;
}

std::vector<BenchmarkRecord> run_semisynthetic(const Dataset& base, std::string_view base_name,
                                               std::span<const std::size_t> target_totals, std::size_t repetitions,
                                               const BenchSettings& settings) {
  std::vector<BenchmarkRecord> records;
  const auto originals = all_names(base);
  for (std::size_t rep = 0; rep < repetitions; ++rep) {
    const std::uint64_t seed = derive_seed(settings.seed, rep);
    const SelectionRun reference = run_algorithm(Algorithm::Boruta, base, settings, seed);
    const std::set<std::string> reference_set(reference.selected.begin(), reference.selected.end());
    const auto extended = extend_real_set(base, target_totals, derive_seed(settings.seed, rep, 0xE57));
    for (std::size_t k = 0; k < extended.size(); ++k) {
      const Dataset& data = extended[k];
      SelectionRun run = run_algorithm(Algorithm::Boruta, data, settings, seed);
      BenchmarkRecord record;
      record.experiment = "semisynth";
      record.n_objects = data.n_objects();
      record.n_attributes = data.n_attributes();
      record.base_set = std::string(base_name);
      record.num_trees = settings.boruta.forest.num_trees;
      record.algorithm = Algorithm::Boruta;
      record.repetition = rep;
      record.counts = score_selection(run.selected, reference.selected, all_names(data));
      record.retained_original = record.counts.tp;
      record.base_confirmed = reference_set.size();
      record.certain_false_positives = count_artificial(data, run.selected);
      record.tentative = run.tentative;
      record.selected = std::move(run.selected);
      record.wall_clock_seconds = run.seconds;
      record.seed = seed;
      records.push_back(std::move(record));
    }
  }
  return records;
}

std::vector<BenchmarkRecord> run_tree_sweep(const Dataset& data, std::string_view base_name,
                                            std::span<const std::size_t> tree_counts, std::size_t repetitions,
                                            bool with_control, const BenchSettings& settings,
                                            std::size_t control_count) {
  if (!std::is_sorted(tree_counts.begin(), tree_counts.end())) throw ConfigError("tree counts must be ascending");
  std::vector<BenchmarkRecord> records;
  for (std::size_t trees : tree_counts) {
    for (std::size_t rep = 0; rep < repetitions; ++rep) {
      const std::uint64_t seed = derive_seed(settings.seed, trees, rep);
      auto record_run = [&](const Dataset& input, const char* experiment) {
        SelectionRun run = run_algorithm(Algorithm::Boruta, input, settings, seed, trees);
        BenchmarkRecord record;
        record.experiment = experiment;
        record.n_objects = input.n_objects();
        record.n_attributes = input.n_attributes();
        record.base_set = std::string(base_name);
        record.num_trees = trees;
        record.algorithm = Algorithm::Boruta;
        record.repetition = rep;
        // No ground truth: every selection counts as a positive.
        record.counts = confusion_from_counts(0, run.selected.size(), 0);
        record.certain_false_positives = count_artificial(input, run.selected);
        record.tentative = run.tentative;
        record.selected = std::move(run.selected);
        record.wall_clock_seconds = run.seconds;
        record.seed = seed;
        records.push_back(std::move(record));
      };
      record_run(data, "sweep");
      if (with_control) {
        record_run(add_permuted_copies(data, control_count, derive_seed(settings.seed, rep, 0xC0)), "sweep-control");
      }
    }
  }
  return records;
}

std::vector<CellSummary> summarize(std::span<const BenchmarkRecord> records) {
  using Key = std::tuple<std::string, std::size_t, std::size_t, std::string, std::size_t, Algorithm>;
  std::map<Key, std::size_t> index;
  std::vector<CellSummary> out;
  std::vector<std::vector<double>> f_scores;
  for (const auto& r : records) {
    const Key key{r.experiment, r.n_objects, r.n_attributes, r.base_set, r.num_trees, r.algorithm};
    auto [it, inserted] = index.emplace(key, out.size());
    if (inserted) {
      CellSummary s;
      s.experiment = r.experiment;
      s.n_objects = r.n_objects;
      s.n_attributes = r.n_attributes;
      s.base_set = r.base_set;
      s.num_trees = r.num_trees;
      s.algorithm = r.algorithm;
      out.push_back(s);
      f_scores.emplace_back();
    }
    CellSummary& s = out[it->second];
    ++s.repetitions;
    s.mean_tp += static_cast<double>(r.counts.tp);
    s.mean_fp += static_cast<double>(r.counts.fp);
    s.mean_fn += static_cast<double>(r.counts.fn);
    s.mean_f += r.counts.f_score;
    s.mean_selected += static_cast<double>(r.selected.size());
    s.mean_certain_false_positives += static_cast<double>(r.certain_false_positives);
    s.mean_retained_original += static_cast<double>(r.retained_original);
    s.mean_seconds += r.wall_clock_seconds;
    f_scores[it->second].push_back(r.counts.f_score);
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    CellSummary& s = out[k];
    const auto n = static_cast<double>(s.repetitions);
    s.mean_tp /= n;
    s.mean_fp /= n;
    s.mean_fn /= n;
    s.mean_f /= n;
    s.mean_selected /= n;
    s.mean_certain_false_positives /= n;
    s.mean_retained_original /= n;
    s.mean_seconds /= n;
    if (s.repetitions > 1) {
      double ss = 0.0;
      for (double f : f_scores[k]) ss += (f - s.mean_f) * (f - s.mean_f);
      s.sd_f = std::sqrt(ss / (n - 1.0));
    }
  }
  return out;
}

std::vector<GridCell> difficulty_ranking(std::span<const CellSummary> summaries) {
  struct Scores {
    double top = -1.0;
    double boruta = -1.0;
  };
  std::map<std::pair<std::size_t, std::size_t>, Scores> cells;
  std::vector<GridCell> order;
  for (const auto& s : summaries) {
    if (s.experiment != "grid") continue;
    const auto key = std::make_pair(s.n_objects, s.n_attributes);
    if (!cells.contains(key)) order.push_back({s.n_objects, s.n_attributes});
    if (s.algorithm == Algorithm::Top) cells[key].top = s.mean_f;
    if (s.algorithm == Algorithm::Boruta) cells[key].boruta = s.mean_f;
  }
  std::stable_sort(order.begin(), order.end(), [&](const GridCell& a, const GridCell& b) {
    const Scores& sa = cells[{a.n_objects, a.n_attributes}];
    const Scores& sb = cells[{b.n_objects, b.n_attributes}];
    if (sa.top != sb.top) return sa.top > sb.top;
    return sa.boruta > sb.boruta;
  });
  return order;
}

}  // namespace allrel
