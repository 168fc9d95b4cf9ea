#include "allrel/contrast.hpp"

#include <vector>

#include "allrel/error.hpp"
#include "allrel/rng.hpp"

namespace allrel {

namespace {

std::vector<double> permuted(std::span<const double> column, Rng rng) {
  std::vector<double> values(column.begin(), column.end());
  rng.shuffle(std::span<double>(values));
  return values;
}

void require_objects(const Dataset& data) {
  if (data.n_objects() == 0) throw InputError("dataset has no objects");
}

}  // namespace

Dataset add_shadow_attributes(const Dataset& data, std::uint64_t seed) {
  require_objects(data);
  const auto originals = data.with_origin(Origin::Original);
  if (originals.empty()) throw InputError("dataset has no original attributes to shadow");

  Dataset out = data;
  const std::size_t count = std::max(originals.size(), kMinShadows);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t source = originals[k % originals.size()];
    const std::string stem = k < originals.size() ? "shadow_" + data.meta(source).name
                                                  : "shadow" + std::to_string(k / originals.size()) + "_" +
                                                        data.meta(source).name;
    AttributeMeta meta{out.unique_name(stem), Origin::Shadow, Relevance::Irrelevant, source, {}};
    out.add_attribute(std::move(meta), permuted(data.column(source), Rng(derive_seed(seed, k))));
  }
  return out;
}

Dataset add_noise_attributes(const Dataset& data, std::size_t target_total, std::uint64_t seed) {
  require_objects(data);
  if (target_total < data.n_attributes()) {
    throw InputError("target total " + std::to_string(target_total) + " is below the current width " +
                     std::to_string(data.n_attributes()));
  }
  Dataset out = data;
  const std::size_t extra = target_total - data.n_attributes();
  for (std::size_t k = 0; k < extra; ++k) {
    Rng rng(derive_seed(seed, k));
    std::vector<double> values(data.n_objects());
    for (double& v : values) v = rng.uniform();
    AttributeMeta meta{out.unique_name("noise" + std::to_string(k + 1)), Origin::Noise, Relevance::Irrelevant,
                       std::nullopt, {}};
    out.add_attribute(std::move(meta), std::move(values));
  }
  return out;
}

Dataset add_permuted_copies(const Dataset& data, std::size_t count, std::uint64_t seed) {
  require_objects(data);
  if (count < 1) throw InputError("permuted copy count must be at least 1");
  const auto originals = data.with_origin(Origin::Original);
  if (originals.empty()) throw InputError("dataset has no original attributes to copy");

  Rng picker(derive_seed(seed, 0));
  Dataset out = data;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t source = originals[picker.below(originals.size())];
    AttributeMeta meta{out.unique_name("permuted" + std::to_string(k + 1) + "_" + data.meta(source).name),
                       Origin::PermutedCopy, Relevance::Irrelevant, source, {}};
    out.add_attribute(std::move(meta), permuted(data.column(source), Rng(derive_seed(seed, k + 1))));
  }
  return out;
}

}  // namespace allrel
