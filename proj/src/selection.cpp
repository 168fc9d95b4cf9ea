#include "allrel/selection.hpp"

#include <algorithm>

#include "allrel/error.hpp"

namespace allrel {

std::string_view to_string(SelectionStatus status) {
  switch (status) {
    case SelectionStatus::Confirmed: return "Confirmed";
    case SelectionStatus::Rejected: return "Rejected";
    case SelectionStatus::Tentative: break;
  }
  return "Tentative";
}

std::vector<std::string> SelectionResult::names_with(SelectionStatus status) const {
  std::vector<std::string> names;
  for (const auto& a : attributes) {
    if (a.status == status) names.push_back(a.name);
  }
  return names;
}

std::size_t SelectionResult::count(SelectionStatus status) const {
  return static_cast<std::size_t>(
      std::count_if(attributes.begin(), attributes.end(), [status](const auto& a) { return a.status == status; }));
}

Dataset as_candidates(const Dataset& data, std::span<const std::size_t> attributes) {
  Dataset out(data.class_labels(), std::vector<ClassId>(data.decision().begin(), data.decision().end()));
  for (std::size_t j : attributes) {
    AttributeMeta meta = data.meta(j);
    if (meta.origin == Origin::Shadow) throw InputError("shadow attribute '" + meta.name + "' given as a candidate");
    meta.origin = Origin::Original;
    meta.source.reset();
    const auto column = data.column(j);
    out.add_attribute(std::move(meta), std::vector<double>(column.begin(), column.end()));
  }
  return out;
}

std::vector<std::size_t> candidate_attributes(const Dataset& data) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < data.n_attributes(); ++j) {
    if (data.meta(j).origin == Origin::Shadow) throw InputError("input already contains shadow attributes");
    out.push_back(j);
  }
  return out;
}

}  // namespace allrel
