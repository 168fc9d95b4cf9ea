#include "allrel/dataset.hpp"

#include <algorithm>
#include <cmath>

#include "allrel/error.hpp"

namespace allrel {

std::string_view to_string(Origin origin) {
  switch (origin) {
    case Origin::Original: return "original";
    case Origin::Shadow: return "shadow";
    case Origin::Noise: return "noise";
    case Origin::PermutedCopy: return "permuted-copy";
  }
  return "unknown";
}

std::string_view to_string(Relevance relevance) {
  switch (relevance) {
    case Relevance::Relevant: return "relevant";
    case Relevance::Irrelevant: return "irrelevant";
    case Relevance::Unknown: break;
  }
  return "unknown";
}

Dataset::Dataset(std::vector<std::string> class_labels, std::vector<ClassId> decision)
    : decision_(std::move(decision)), labels_(std::move(class_labels)) {
  for (ClassId c : decision_) {
    if (c >= labels_.size()) throw InputError("decision class id out of range of the label table");
  }
}

void Dataset::add_attribute(AttributeMeta meta, std::vector<double> values) {
  if (values.size() != decision_.size()) {
    throw InputError("attribute '" + meta.name + "' has " + std::to_string(values.size()) +
                     " values, expected " + std::to_string(decision_.size()));
  }
  if (by_name_.contains(meta.name)) throw InputError("duplicate attribute name '" + meta.name + "'");
  if (!std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); })) {
    throw InputError("attribute '" + meta.name + "' contains a non-finite value");
  }
  by_name_.emplace(meta.name, columns_.size());
  meta_.push_back(std::move(meta));
  columns_.push_back(std::move(values));
}

std::optional<std::size_t> Dataset::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> Dataset::with_origin(Origin origin) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < meta_.size(); ++j) {
    if (meta_[j].origin == origin) out.push_back(j);
  }
  return out;
}

Dataset Dataset::select(std::span<const std::size_t> attributes) const {
  Dataset out(labels_, decision_);
  for (std::size_t j : attributes) {
    AttributeMeta meta = meta_.at(j);
    meta.source.reset();
    out.add_attribute(std::move(meta), columns_[j]);
  }
  return out;
}

void Dataset::set_relevance(std::size_t attribute, Relevance relevance) {
  meta_.at(attribute).relevance = relevance;
}

std::string Dataset::unique_name(const std::string& stem) const {
  if (!by_name_.contains(stem)) return stem;
  for (std::size_t k = 1;; ++k) {
    std::string candidate = stem + "_" + std::to_string(k);
    if (!by_name_.contains(candidate)) return candidate;
  }
}

void Dataset::validate_for_training() const {
  if (decision_.empty()) throw InputError("dataset has no objects");
  if (columns_.empty()) throw InputError("dataset has no attributes");
  const ClassId first = decision_.front();
  if (std::all_of(decision_.begin(), decision_.end(), [first](ClassId c) { return c == first; })) {
    throw TrainingError("decision has a single class; at least two are needed for training");
  }
}

}  // namespace allrel
