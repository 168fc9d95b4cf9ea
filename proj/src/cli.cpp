#include "allrel/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "allrel/ace.hpp"
#include "allrel/bench.hpp"
#include "allrel/boruta.hpp"
#include "allrel/csv.hpp"
#include "allrel/datagen.hpp"
#include "allrel/error.hpp"
#include "allrel/report.hpp"

namespace allrel {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char separator) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, separator)) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

std::size_t parse_count(const std::string& text) {
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &used);
  } catch (const std::exception&) {
    throw UsageError("'" + text + "' is not a non-negative integer");
  }
  if (used != text.size() || text.front() == '-') throw UsageError("'" + text + "' is not a non-negative integer");
  return static_cast<std::size_t>(value);
}

std::vector<std::size_t> parse_counts(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_count(part));
  if (out.empty()) throw UsageError("empty list '" + text + "'");
  return out;
}

std::vector<GridCell> parse_cells(const std::string& text) {
  std::vector<GridCell> cells;
  for (const auto& part : split(text, ',')) {
    const auto x = part.find('x');
    if (x == std::string::npos) throw UsageError("cell '" + part + "' is not of the form <objects>x<attributes>");
    cells.push_back({parse_count(part.substr(0, x)), parse_count(part.substr(x + 1))});
  }
  if (cells.empty()) throw UsageError("no cells given");
  return cells;
}

std::vector<Algorithm> parse_algorithms(const std::string& text) {
  std::vector<Algorithm> out;
  for (const auto& part : split(text, ',')) {
    const auto algorithm = parse_algorithm(part);
    if (!algorithm) throw UsageError("unknown algorithm '" + part + "'");
    out.push_back(*algorithm);
  }
  if (out.empty()) throw UsageError("no algorithms given");
  return out;
}

// Shortest round-trip form, always showing a fractional part.
std::string format_ratio(double value) {
  std::string s = format_number(value);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

// Attribute names from a file: either a `select` result document (its
// Confirmed attributes) or one name per line, '#' starting a comment.
std::vector<std::string> read_names(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  std::vector<std::string> names;
  if (trim(text).starts_with("{")) {
    const json doc = json::parse(text);
    for (const auto& a : doc.at("result").at("attributes")) {
      if (a.at("status") == "Confirmed") names.push_back(a.at("name").get<std::string>());
    }
    return names;
  }
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    line = trim(line.substr(0, line.find('#')));
    if (!line.empty()) names.push_back(line);
  }
  return names;
}

void emit(const std::string& out_path, const std::string& contents, std::ostream& out) {
  if (out_path.empty()) {
    out << contents;
  } else {
    write_file_atomically(out_path, contents);
  }
}

std::string sidecar(const std::string& out_path, const std::string& suffix) { return out_path + suffix; }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct CommonBench {
  std::uint64_t seed = 0;
  std::size_t reps = 15;
  std::size_t jobs = 0;
  std::size_t trees = 500;
  std::size_t max_runs = 100;
  std::string out;
};

void add_common_bench(CLI::App* cmd, CommonBench& common, bool with_trees) {
  cmd->add_option("--seed", common.seed, "Master seed")->capture_default_str();
  cmd->add_option("--reps", common.reps, "Repetitions per cell")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--jobs", common.jobs, "Worker threads (0: all hardware threads)")->capture_default_str();
  if (with_trees) cmd->add_option("--trees", common.trees, "Trees per forest")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--max-runs", common.max_runs, "Boruta iteration cap")->capture_default_str();
  cmd->add_option("--out", common.out, "Record stream (JSON lines); summaries are written next to it");
}

BenchSettings bench_settings(const CommonBench& common) {
  BenchSettings settings;
  settings.seed = common.seed;
  settings.forest.num_trees = common.trees;
  settings.forest.jobs = common.jobs;
  settings.boruta.max_runs = common.max_runs;
  settings.boruta.forest = settings.forest;
  settings.ace.forest = settings.forest;
  settings.boruta.validate();
  settings.ace.validate();
  return settings;
}

json bench_header(const std::string& command, const CommonBench& common, const BenchSettings& settings, json extra) {
  json config = {{"seed", common.seed},
                 {"repetitions", common.reps},
                 {"topN", settings.top_n},
                 {"forest", to_json(settings.forest)},
                 {"boruta", to_json(settings.boruta)},
                 {"ace", to_json(settings.ace)}};
  config.update(extra);
  return {{"tool", kToolName}, {"version", kToolVersion}, {"command", command}, {"config", std::move(config)}};
}

void emit_bench(const CommonBench& common, const std::vector<BenchmarkRecord>& records, const json& header,
                bool difficulty, bool selection_sets, std::ostream& out) {
  std::ostringstream stream;
  write_records_jsonl(stream, records, header);
  const auto summaries = summarize(records);
  if (common.out.empty()) {
    out << stream.str();
    return;
  }
  std::ostringstream summary, timing;
  write_summary_csv(summary, summaries);
  write_timing_csv(timing, records);
  write_file_atomically(common.out, stream.str());
  write_file_atomically(sidecar(common.out, ".summary.csv"), summary.str());
  write_file_atomically(sidecar(common.out, ".timing.csv"), timing.str());
  if (difficulty) {
    std::ostringstream ranked;
    write_difficulty_csv(ranked, summaries);
    write_file_atomically(sidecar(common.out, ".difficulty.csv"), ranked.str());
  }
  if (selection_sets) {
    std::ostringstream sets;
    write_selection_sets_csv(sets, records);
    write_file_atomically(sidecar(common.out, ".sets.csv"), sets.str());
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"All-relevant feature selection with random forests"};
  app.name(args.empty() ? "allrel" : fs::path(args.front()).filename().string());
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  // select
  auto* select = app.add_subcommand("select", "Run Boruta or ACE on a CSV dataset");
  std::string data_path, decision = "class", algorithm = "boruta", out_path;
  std::size_t trees = 500, mtry = 0, min_node = 1, max_runs = 100, replicates = 20, max_stages = 10, jobs = 0;
  double alpha = 0.0, quantile = 0.75, weight_floor = AceConfig{}.weight_floor, time_budget = 0.0;
  std::uint64_t seed = 0;
  select->add_option("--data", data_path, "Input CSV with a header row")->required()->check(CLI::ExistingFile);
  select->add_option("--decision", decision, "Name of the decision column")->capture_default_str();
  select->add_option("--algorithm", algorithm, "boruta or ace")
      ->capture_default_str()
      ->check(CLI::IsMember({"boruta", "ace"}));
  select->add_option("--trees", trees, "Trees per forest")->capture_default_str()->check(CLI::PositiveNumber);
  select->add_option("--mtry", mtry, "Attributes tried per split (0: floor(sqrt(p)))")->capture_default_str();
  select->add_option("--min-node-size", min_node, "Minimum samples per leaf")->capture_default_str();
  auto* max_runs_opt = select->add_option("--max-runs", max_runs, "Boruta iteration cap")->capture_default_str();
  auto* alpha_opt = select->add_option("--alpha", alpha, "Significance level (boruta 0.01, ace 0.05)");
  auto* replicates_opt = select->add_option("--replicates", replicates, "ACE replicates per stage")->capture_default_str();
  auto* quantile_opt = select->add_option("--quantile", quantile, "ACE contrast quantile")->capture_default_str();
  auto* stages_opt = select->add_option("--max-stages", max_stages, "ACE stage cap")->capture_default_str();
  auto* floor_opt = select->add_option("--weight-floor", weight_floor, "ACE object weight floor")->capture_default_str();
  auto* budget_opt = select->add_option("--time-budget", time_budget, "ACE wall-clock budget in seconds (0: none)");
  select->add_option("--seed", seed, "Seed for all randomness")->capture_default_str();
  select->add_option("--jobs", jobs, "Worker threads (0: all hardware threads)")->capture_default_str();
  select->add_option("--out", out_path, "Result document path (default: stdout)");

  // gen-xor
  auto* gen = app.add_subcommand("gen-xor", "Write a synthetic XOR dataset as CSV");
  std::size_t objects = 0, attributes = 0;
  std::string truth_out;
  gen->add_option("--objects", objects, "Number of objects")->required();
  gen->add_option("--attributes", attributes, "Number of attributes")->required();
  gen->add_option("--seed", seed, "Seed")->capture_default_str();
  gen->add_option("--out", out_path, "CSV path (default: stdout)");
  gen->add_option("--truth-out", truth_out, "Also write the relevant attribute names here");

  // bench-grid
  auto* grid = app.add_subcommand("bench-grid", "Synthetic XOR grid benchmark");
  CommonBench grid_common;
  std::string cells_text = "2000x125", algorithms_text = "top,boruta,ace";
  bool full = false;
  auto* cells_opt = grid->add_option("--cells", cells_text, "Cells as <objects>x<attributes>,...")->capture_default_str();
  auto* full_opt = grid->add_flag("--full", full, "Run the complete 30-cell grid");
  grid->add_option("--algorithms", algorithms_text, "Comma list of top, boruta, ace")->capture_default_str();
  add_common_bench(grid, grid_common, true);
  full_opt->excludes(cells_opt);

  // bench-semisynth
  auto* semi = app.add_subcommand("bench-semisynth", "Noise-extended real dataset benchmark");
  CommonBench semi_common;
  std::string totals_text = "125,250,500,1000,2000", base_name;
  semi->add_option("--data", data_path, "Base dataset CSV")->required()->check(CLI::ExistingFile);
  semi->add_option("--decision", decision, "Name of the decision column")->capture_default_str();
  semi->add_option("--name", base_name, "Base set name for the records (default: file stem)");
  semi->add_option("--totals", totals_text, "Total attribute counts")->capture_default_str();
  add_common_bench(semi, semi_common, true);

  // bench-sweep
  auto* sweep = app.add_subcommand("bench-sweep", "Boruta forest-size sweep with optional permuted-copy control");
  CommonBench sweep_common;
  std::string tree_counts_text = "500,1000,2000,5000,10000,20000,50000,100000";
  bool control = false;
  std::size_t control_count = 1000;
  sweep->add_option("--data", data_path, "Dataset CSV")->required()->check(CLI::ExistingFile);
  sweep->add_option("--decision", decision, "Name of the decision column")->capture_default_str();
  sweep->add_option("--name", base_name, "Dataset name for the records (default: file stem)");
  sweep->add_option("--tree-counts", tree_counts_text, "Ascending forest sizes")->capture_default_str();
  sweep->add_flag("--control", control, "Repeat every run on data extended with permuted copies");
  sweep->add_option("--control-count", control_count, "Number of permuted copies in the control")->capture_default_str();
  add_common_bench(sweep, sweep_common, false);

  // score
  auto* score = app.add_subcommand("score", "Compare a selection with the ground truth");
  std::string selection_path, truth_path, universe_path;
  score->add_option("--selection", selection_path, "Selection: name list or select result document")
      ->required()
      ->check(CLI::ExistingFile);
  score->add_option("--truth", truth_path, "Relevant attribute names, one per line")->required()->check(CLI::ExistingFile);
  score->add_option("--universe", universe_path, "All attribute names (default: selection and truth)")
      ->check(CLI::ExistingFile);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (select->parsed()) {
      const auto start = std::chrono::steady_clock::now();
      const bool ace = algorithm == "ace";
      if (ace && max_runs_opt->count() > 0) throw UsageError("--max-runs applies to boruta only");
      if (!ace) {
        for (const auto* opt : {replicates_opt, quantile_opt, stages_opt, floor_opt, budget_opt}) {
          if (opt->count() > 0) throw UsageError(opt->get_name() + " applies to ace only");
        }
      }
      ForestConfig forest;
      forest.num_trees = trees;
      forest.mtry = mtry;
      forest.min_node_size = min_node;
      forest.jobs = jobs;
      const Dataset data = ingest_csv(data_path, decision);
      forest.validate(data.n_attributes());
      const json input = {{"path", data_path},
                          {"decision", decision},
                          {"nObjects", data.n_objects()},
                          {"nAttributes", data.n_attributes()}};
      json document;
      if (ace) {
        AceConfig config;
        config.forest = forest;
        config.replicates = replicates;
        config.quantile = quantile;
        config.alpha = alpha_opt->count() > 0 ? alpha : 0.05;
        config.max_stages = max_stages;
        config.weight_floor = weight_floor;
        config.time_budget_seconds = time_budget;
        config.seed = seed;
        config.validate();
        document = selection_document(run_ace(data, config), data, input, to_json(config), seed);
      } else {
        BorutaConfig config;
        config.forest = forest;
        config.max_runs = max_runs;
        config.alpha = alpha_opt->count() > 0 ? alpha : 0.01;
        config.seed = seed;
        config.validate();
        document = selection_document(run_boruta(data, config), data, input, to_json(config), seed);
      }
      emit(out_path, document.dump(2) + "\n", out);
      const json timing = {{"tool", kToolName}, {"command", "select"}, {"wallClockSeconds", seconds_since(start)}};
      if (out_path.empty()) {
        err << "wall clock: " << format_number(seconds_since(start)) << " s\n";
      } else {
        write_file_atomically(sidecar(out_path, ".timing.json"), timing.dump(2) + "\n");
      }
      return kExitOk;
    }

    if (gen->parsed()) {
      const Dataset data = generate_xor_set(objects, attributes, seed);
      std::ostringstream csv;
      write_dataset(csv, data);
      if (!truth_out.empty()) {
        std::string truth;
        for (std::size_t j = 0; j < data.n_attributes(); ++j) {
          if (data.meta(j).relevance == Relevance::Relevant) truth += data.meta(j).name + "\n";
        }
        write_file_atomically(truth_out, truth);
      }
      emit(out_path, csv.str(), out);
      return kExitOk;
    }

    if (grid->parsed()) {
      const auto cells = full ? grid_sizes() : parse_cells(cells_text);
      const auto algorithms = parse_algorithms(algorithms_text);
      const BenchSettings settings = bench_settings(grid_common);
      json cell_list = json::array();
      for (const auto& c : cells) cell_list.push_back({c.n_objects, c.n_attributes});
      const json header = bench_header("bench-grid", grid_common, settings,
                                       {{"cells", cell_list}, {"algorithms", split(algorithms_text, ',')}});
      const auto records = run_synthetic_grid(cells, algorithms, grid_common.reps, settings);
      emit_bench(grid_common, records, header, true, false, out);
      return kExitOk;
    }

    if (semi->parsed()) {
      const auto totals = parse_counts(totals_text);
      const BenchSettings settings = bench_settings(semi_common);
      const Dataset data = ingest_csv(data_path, decision);
      const std::string name = base_name.empty() ? fs::path(data_path).stem().string() : base_name;
      const json header = bench_header("bench-semisynth", semi_common, settings,
                                       {{"data", data_path}, {"decision", decision}, {"baseSet", name}, {"totals", totals}});
      const auto records = run_semisynthetic(data, name, totals, semi_common.reps, settings);
      emit_bench(semi_common, records, header, false, false, out);
      return kExitOk;
    }

    if (sweep->parsed()) {
      const auto tree_counts = parse_counts(tree_counts_text);
      const BenchSettings settings = bench_settings(sweep_common);
      const Dataset data = ingest_csv(data_path, decision);
      const std::string name = base_name.empty() ? fs::path(data_path).stem().string() : base_name;
      const json header = bench_header("bench-sweep", sweep_common, settings,
                                       {{"data", data_path},
                                        {"decision", decision},
                                        {"baseSet", name},
                                        {"treeCounts", tree_counts},
                                        {"control", control},
                                        {"controlCount", control_count}});
      const auto records =
          run_tree_sweep(data, name, tree_counts, sweep_common.reps, control, settings, control_count);
      emit_bench(sweep_common, records, header, false, true, out);
      return kExitOk;
    }

    if (score->parsed()) {
      const auto selected = read_names(selection_path);
      const auto truth = read_names(truth_path);
      std::vector<std::string> universe;
      if (universe_path.empty()) {
        std::set<std::string> all(selected.begin(), selected.end());
        all.insert(truth.begin(), truth.end());
        universe.assign(all.begin(), all.end());
      } else {
        universe = read_names(universe_path);
      }
      const ConfusionCounts c = score_selection(selected, truth, universe);
      out << "TP=" << c.tp << " FP=" << c.fp << " FN=" << c.fn << "\n"
          << "precision=" << format_ratio(c.precision) << " recall=" << format_ratio(c.recall)
          << " F=" << format_ratio(c.f_score) << "\n";
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace allrel
