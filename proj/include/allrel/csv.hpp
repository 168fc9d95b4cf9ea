#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "allrel/dataset.hpp"

namespace allrel {

using CsvRecord = std::vector<std::string>;

// RFC 4180 records: quoted fields, doubled quotes, CRLF or LF line ends.
std::vector<CsvRecord> parse_csv_records(std::istream& in);

struct CsvOptions {
  // Cells (after trimming blanks) treated as missing values.
  std::vector<std::string> missing_tokens{"", "NA"};
};

// Reads a header-first CSV. Numeric columns become attributes as they are;
// any column with a non-numeric cell is integer-coded in order of first
// appearance and its code table kept in AttributeMeta::codes. Decision
// labels are numbered in order of first appearance too.
Dataset read_dataset(std::istream& in, std::string_view decision_column, const CsvOptions& options = {});
Dataset ingest_csv(const std::filesystem::path& path, std::string_view decision_column,
                   const CsvOptions& options = {});

// Writes attributes (categorical ones as their category names) followed by
// the decision column, numbers in shortest round-trip form.
void write_dataset(std::ostream& out, const Dataset& data, std::string_view decision_column = "class");

std::string format_number(double value);
std::string quote_csv_field(std::string_view field);

}  // namespace allrel
