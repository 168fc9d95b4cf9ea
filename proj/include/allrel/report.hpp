#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "allrel/ace.hpp"
#include "allrel/bench.hpp"
#include "allrel/boruta.hpp"
#include "allrel/dataset.hpp"
#include "allrel/selection.hpp"

namespace allrel {

inline constexpr std::string_view kToolName = "allrel";
inline constexpr std::string_view kToolVersion = "0.1.0";

nlohmann::json to_json(const ForestConfig& config);
nlohmann::json to_json(const BorutaConfig& config);
nlohmann::json to_json(const AceConfig& config);
nlohmann::json to_json(const ConfusionCounts& counts);

// Everything needed to reproduce a selection run. Contains no timings, so
// equal inputs give byte-identical documents.
nlohmann::json selection_document(const SelectionResult& result, const Dataset& data, const nlohmann::json& input,
                                  const nlohmann::json& config, std::uint64_t seed);

// One benchmark record without its wall-clock time.
nlohmann::json to_json(const BenchmarkRecord& record);

void write_records_jsonl(std::ostream& out, std::span<const BenchmarkRecord> records, const nlohmann::json& header);
void write_summary_csv(std::ostream& out, std::span<const CellSummary> summaries);
void write_timing_csv(std::ostream& out, std::span<const BenchmarkRecord> records);
void write_difficulty_csv(std::ostream& out, std::span<const CellSummary> summaries);
// Per attribute and forest size, how many repetitions selected it.
void write_selection_sets_csv(std::ostream& out, std::span<const BenchmarkRecord> records);

// Writes through a temporary sibling and renames, so a failed run never
// leaves a partial file behind.
void write_file_atomically(const std::filesystem::path& path, std::string_view contents);

}  // namespace allrel
