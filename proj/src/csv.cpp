#include "allrel/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <unordered_map>

#include "allrel/error.hpp"

namespace allrel {

std::vector<CsvRecord> parse_csv_records(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::vector<CsvRecord> records;
  CsvRecord record;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t line = 1;
  std::size_t i = 0;
  if (text.starts_with("\xEF\xBB\xBF")) i = 3;

  auto end_record = [&] {
    record.push_back(std::move(field));
    field.clear();
    records.push_back(std::move(record));
    record.clear();
    field_started = false;
  };

  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty()) throw ParseError("stray quote inside an unquoted field on line " + std::to_string(line));
        quoted = true;
        field_started = true;
        break;
      case ',':
        record.push_back(std::move(field));
        field.clear();
        field_started = true;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        [[fallthrough]];
      case '\n':
        end_record();
        ++line;
        break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (quoted) throw ParseError("unterminated quoted field at end of input");
  if (field_started || !field.empty() || !record.empty()) end_record();
  // Blank lines carry no record.
  std::erase_if(records, [](const CsvRecord& r) { return r.size() == 1 && r.front().empty(); });
  return records;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

bool parse_number(std::string_view s, double& value) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && end == s.data() + s.size() && std::isfinite(value);
}

}  // namespace

Dataset read_dataset(std::istream& in, std::string_view decision_column, const CsvOptions& options) {
  const auto records = parse_csv_records(in);
  if (records.empty()) throw ParseError("CSV input is empty; a header row is required");
  const CsvRecord& header = records.front();
  const std::size_t width = header.size();
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != width) {
      throw ParseError("row " + std::to_string(r + 1) + " has " + std::to_string(records[r].size()) +
                       " fields, header has " + std::to_string(width));
    }
  }
  const auto decision_it = std::find(header.begin(), header.end(), decision_column);
  if (decision_it == header.end()) throw InputError("decision column '" + std::string(decision_column) + "' not found");
  const auto decision_index = static_cast<std::size_t>(decision_it - header.begin());
  const std::size_t n = records.size() - 1;
  if (n == 0) throw InputError("CSV has a header but no data rows");

  auto is_missing = [&](const std::string& cell) {
    const auto t = trim(cell);
    return std::find(options.missing_tokens.begin(), options.missing_tokens.end(), t) != options.missing_tokens.end();
  };
  for (std::size_t r = 1; r < records.size(); ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      if (is_missing(records[r][c])) {
        throw InputError("missing value at row " + std::to_string(r + 1) + ", column " + std::to_string(c + 1) +
                         " ('" + header[c] + "')");
      }
    }
  }

  std::vector<std::string> labels;
  std::unordered_map<std::string, ClassId> label_ids;
  std::vector<ClassId> decision(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::string label(trim(records[r + 1][decision_index]));
    auto [it, inserted] = label_ids.emplace(label, static_cast<ClassId>(labels.size()));
    if (inserted) labels.push_back(label);
    decision[r] = it->second;
  }
  Dataset data(std::move(labels), std::move(decision));

  for (std::size_t c = 0; c < width; ++c) {
    if (c == decision_index) continue;
    AttributeMeta meta{header[c], Origin::Original, Relevance::Unknown, std::nullopt, {}};
    std::vector<double> values(n);
    bool numeric = true;
    for (std::size_t r = 0; r < n && numeric; ++r) numeric = parse_number(records[r + 1][c], values[r]);
    if (!numeric) {
      std::unordered_map<std::string, std::size_t> codes;
      for (std::size_t r = 0; r < n; ++r) {
        const std::string cell(trim(records[r + 1][c]));
        auto [it, inserted] = codes.emplace(cell, meta.codes.size());
        if (inserted) meta.codes.push_back(cell);
        values[r] = static_cast<double>(it->second);
      }
    }
    data.add_attribute(std::move(meta), std::move(values));
  }
  data.validate_for_training();
  return data;
}

Dataset ingest_csv(const std::filesystem::path& path, std::string_view decision_column, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return read_dataset(in, decision_column, options);
}

std::string format_number(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, end);
}

std::string quote_csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_dataset(std::ostream& out, const Dataset& data, std::string_view decision_column) {
  for (std::size_t j = 0; j < data.n_attributes(); ++j) out << quote_csv_field(data.meta(j).name) << ',';
  out << quote_csv_field(decision_column) << '\n';
  for (std::size_t i = 0; i < data.n_objects(); ++i) {
    for (std::size_t j = 0; j < data.n_attributes(); ++j) {
      const double v = data.column(j)[i];
      const auto& codes = data.meta(j).codes;
      if (!codes.empty()) {
        out << quote_csv_field(codes.at(static_cast<std::size_t>(v)));
      } else {
        out << format_number(v);
      }
      out << ',';
    }
    out << quote_csv_field(data.class_labels()[data.decision()[i]]) << '\n';
  }
}

}  // namespace allrel
