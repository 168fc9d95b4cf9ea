#include "allrel/report.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>

#include "allrel/csv.hpp"
#include "allrel/error.hpp"

namespace allrel {

using nlohmann::json;

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json to_json(const ForestConfig& config) {
  return {{"numTrees", config.num_trees},
          {"mtry", config.mtry},
          {"minNodeSize", config.min_node_size},
          {"bootstrap", config.bootstrap},
          {"splitCriterion", "gini"}};
}

json to_json(const BorutaConfig& config) {
  return {{"algorithm", "boruta"},
          {"maxRuns", config.max_runs},
          {"alpha", config.alpha},
          {"firstDecisionIteration", kFirstDecisionIteration},
          {"importance", "z-score"},
          {"forest", to_json(config.forest)}};
}

json to_json(const AceConfig& config) {
  return {{"algorithm", "ace"},
          {"replicates", config.replicates},
          {"quantile", config.quantile},
          {"alpha", config.alpha},
          {"maxStages", config.max_stages},
          {"weightFloor", config.weight_floor},
          {"timeBudgetSeconds", config.time_budget_seconds},
          {"importance", "z-score"},
          {"forest", to_json(config.forest)}};
}

json to_json(const ConfusionCounts& counts) {
  return {{"tp", counts.tp},
          {"fp", counts.fp},
          {"fn", counts.fn},
          {"precision", counts.precision},
          {"recall", counts.recall},
          {"fScore", counts.f_score}};
}

json selection_document(const SelectionResult& result, const Dataset& data, const json& input, const json& config,
                        std::uint64_t seed) {
  json codes = json::object();
  for (std::size_t j = 0; j < data.n_attributes(); ++j) {
    if (!data.meta(j).codes.empty()) codes[data.meta(j).name] = data.meta(j).codes;
  }
  json classes = json::array();
  for (std::size_t c = 0; c < data.n_classes(); ++c) classes.push_back({{"id", c}, {"label", data.class_labels()[c]}});

  json attributes = json::array();
  for (const auto& a : result.attributes) {
    attributes.push_back({{"name", a.name},
                          {"origin", to_string(a.origin)},
                          {"status", to_string(a.status)},
                          {"hits", a.hits},
                          {"decidedAt", a.decided_at},
                          {"meanZ", a.mean_z},
                          {"meanRaw", a.mean_raw}});
  }
  json history = json::array();
  for (const auto& h : result.history) {
    json z = json::array();
    for (double v : h.z) z.push_back(number_or_null(v));
    history.push_back({{"shadowReference", number_or_null(h.shadow_reference)},
                       {"shadowMin", number_or_null(h.shadow_min)},
                       {"shadowMean", number_or_null(h.shadow_mean)},
                       {"shadowMax", number_or_null(h.shadow_max)},
                       {"z", std::move(z)}});
  }
  return {{"tool", kToolName},
          {"version", kToolVersion},
          {"command", "select"},
          {"seed", seed},
          {"input", input},
          {"config", config},
          {"classes", std::move(classes)},
          {"codeTables", std::move(codes)},
          {"result",
           {{"algorithm", result.algorithm},
            {"iterations", result.iterations},
            {"converged", result.converged},
            {"confirmed", result.count(SelectionStatus::Confirmed)},
            {"rejected", result.count(SelectionStatus::Rejected)},
            {"tentative", result.count(SelectionStatus::Tentative)},
            {"attributes", std::move(attributes)},
            {"history", std::move(history)}}}};
}

json to_json(const BenchmarkRecord& record) {
  return {{"experiment", record.experiment},
          {"nObjects", record.n_objects},
          {"nAttributes", record.n_attributes},
          {"baseSet", record.base_set},
          {"numTrees", record.num_trees},
          {"algorithm", to_string(record.algorithm)},
          {"repetition", record.repetition},
          {"counts", to_json(record.counts)},
          {"selected", record.selected},
          {"tentative", record.tentative},
          {"certainFalsePositives", record.certain_false_positives},
          {"retainedOriginal", record.retained_original},
          {"baseConfirmed", record.base_confirmed},
          {"seed", record.seed}};
}

void write_records_jsonl(std::ostream& out, std::span<const BenchmarkRecord> records, const json& header) {
  out << header.dump() << '\n';
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

void write_summary_csv(std::ostream& out, std::span<const CellSummary> summaries) {
  out << "experiment,base_set,n_objects,n_attributes,num_trees,algorithm,repetitions,mean_tp,mean_fp,mean_fn,"
         "mean_f,sd_f,mean_selected,mean_certain_false_positives,mean_retained_original\n";
  for (const auto& s : summaries) {
    out << s.experiment << ',' << quote_csv_field(s.base_set) << ',' << s.n_objects << ',' << s.n_attributes << ','
        << s.num_trees << ',' << to_string(s.algorithm) << ',' << s.repetitions << ',' << format_number(s.mean_tp)
        << ',' << format_number(s.mean_fp) << ',' << format_number(s.mean_fn) << ',' << format_number(s.mean_f) << ','
        << format_number(s.sd_f) << ',' << format_number(s.mean_selected) << ','
        << format_number(s.mean_certain_false_positives) << ',' << format_number(s.mean_retained_original) << '\n';
  }
}

void write_timing_csv(std::ostream& out, std::span<const BenchmarkRecord> records) {
  out << "experiment,base_set,n_objects,n_attributes,num_trees,algorithm,repetition,wall_clock_seconds\n";
  for (const auto& r : records) {
    out << r.experiment << ',' << quote_csv_field(r.base_set) << ',' << r.n_objects << ',' << r.n_attributes << ','
        << r.num_trees << ',' << to_string(r.algorithm) << ',' << r.repetition << ','
        << format_number(r.wall_clock_seconds) << '\n';
  }
}

void write_difficulty_csv(std::ostream& out, std::span<const CellSummary> summaries) {
  out << "rank,n_objects,n_attributes,top_f,boruta_f,ace_f\n";
  const auto ranking = difficulty_ranking(summaries);
  auto score = [&](const GridCell& cell, Algorithm algorithm) -> std::string {
    for (const auto& s : summaries) {
      if (s.experiment == "grid" && s.n_objects == cell.n_objects && s.n_attributes == cell.n_attributes &&
          s.algorithm == algorithm) {
        return format_number(s.mean_f);
      }
    }
    return "";
  };
  for (std::size_t k = 0; k < ranking.size(); ++k) {
    const GridCell& c = ranking[k];
    out << k + 1 << ',' << c.n_objects << ',' << c.n_attributes << ',' << score(c, Algorithm::Top) << ','
        << score(c, Algorithm::Boruta) << ',' << score(c, Algorithm::Ace) << '\n';
  }
}

void write_selection_sets_csv(std::ostream& out, std::span<const BenchmarkRecord> records) {
  std::set<std::size_t> sizes;
  std::map<std::string, std::map<std::size_t, std::size_t>> hits;
  for (const auto& r : records) {
    if (r.experiment != "sweep") continue;
    sizes.insert(r.num_trees);
    for (const auto& name : r.selected) ++hits[name][r.num_trees];
  }
  out << "attribute";
  for (std::size_t s : sizes) out << ",trees_" << s;
  out << '\n';
  for (const auto& [name, per_size] : hits) {
    out << quote_csv_field(name);
    for (std::size_t s : sizes) {
      const auto it = per_size.find(s);
      out << ',' << (it == per_size.end() ? 0 : it->second);
    }
    out << '\n';
  }
}

void write_file_atomically(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path temporary = path;
  temporary += ".partial";
  {
    std::ofstream out(temporary, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + temporary.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw InputError("failed writing '" + temporary.string() + "'");
  }
  std::filesystem::rename(temporary, path);
}

}  // namespace allrel
