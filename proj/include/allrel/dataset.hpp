#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace allrel {

using ClassId = std::uint16_t;

// Where an attribute came from. Everything except Original is artificial and
// therefore irrelevant by construction.
enum class Origin : std::uint8_t { Original, Shadow, Noise, PermutedCopy };

// Known ground truth about an attribute, when the data was designed.
enum class Relevance : std::uint8_t { Unknown, Relevant, Irrelevant };

std::string_view to_string(Origin origin);
std::string_view to_string(Relevance relevance);

struct AttributeMeta {
  std::string name;
  Origin origin = Origin::Original;
  Relevance relevance = Relevance::Unknown;
  // Column this one was derived from (shadows and permuted copies).
  std::optional<std::size_t> source;
  // Category names for integer-encoded categorical columns, indexed by code.
  std::vector<std::string> codes;
};

// Column-oriented information system: numeric attributes plus a categorical
// decision. Immutable once built, so it can be shared across threads.
class Dataset {
 public:
  Dataset() = default;

  // `decision` holds ids into `class_labels`.
  Dataset(std::vector<std::string> class_labels, std::vector<ClassId> decision);

  // Appends a column. Throws InputError on a length mismatch, a duplicate
  // name or a non-finite value.
  void add_attribute(AttributeMeta meta, std::vector<double> values);

  std::size_t n_objects() const noexcept { return decision_.size(); }
  std::size_t n_attributes() const noexcept { return columns_.size(); }
  std::size_t n_classes() const noexcept { return labels_.size(); }

  std::span<const double> column(std::size_t attribute) const { return columns_.at(attribute); }
  const AttributeMeta& meta(std::size_t attribute) const { return meta_.at(attribute); }
  std::span<const ClassId> decision() const noexcept { return decision_; }
  const std::vector<std::string>& class_labels() const noexcept { return labels_; }

  std::optional<std::size_t> find(std::string_view name) const;

  // Indices of attributes with the given origin, ascending.
  std::vector<std::size_t> with_origin(Origin origin) const;

  // New dataset with the listed attributes, in the listed order.
  Dataset select(std::span<const std::size_t> attributes) const;

  // Same dataset with the relevance flag of attribute `attribute` replaced.
  void set_relevance(std::size_t attribute, Relevance relevance);

  // Name not yet used by any attribute, built from `stem`.
  std::string unique_name(const std::string& stem) const;

  // Throws unless the data can train a classifier: at least one object, one
  // attribute and two distinct classes.
  void validate_for_training() const;

 private:
  std::vector<std::vector<double>> columns_;
  std::vector<AttributeMeta> meta_;
  std::vector<ClassId> decision_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> by_name_;
};

}  // namespace allrel
