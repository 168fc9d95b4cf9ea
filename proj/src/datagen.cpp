#include "allrel/datagen.hpp"

#include <cmath>
#include <string>

#include "allrel/contrast.hpp"
#include "allrel/error.hpp"
#include "allrel/rng.hpp"

namespace allrel {

namespace {

constexpr std::size_t kCombinations = 8;

Dataset build_xor(std::span<const std::pair<double, double>> base, std::size_t n_attributes, Rng& rng) {
  if (n_attributes < kXorRelevant) {
    throw InputError("an XOR set needs at least " + std::to_string(kXorRelevant) + " attributes");
  }
  const std::size_t n = base.size();
  std::vector<ClassId> decision(n);
  std::vector<double> first(n), second(n);
  for (std::size_t i = 0; i < n; ++i) {
    first[i] = base[i].first;
    second[i] = base[i].second;
    decision[i] = static_cast<ClassId>((first[i] > 0.0) != (second[i] > 0.0));
  }
  Dataset data({"0", "1"}, std::move(decision));
  auto name = [](std::size_t k) { return "V" + std::to_string(k); };
  data.add_attribute({name(1), Origin::Original, Relevance::Relevant, std::nullopt, {}}, first);
  data.add_attribute({name(2), Origin::Original, Relevance::Relevant, std::nullopt, {}}, second);

  for (std::size_t c = 0; c < kCombinations; ++c) {
    double a = 0.0;
    double b = 0.0;
    do {
      a = rng.uniform(-1.0, 1.0);
      b = rng.uniform(-1.0, 1.0);
    } while (std::abs(a) < 1e-6 && std::abs(b) < 1e-6);
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = a * first[i] + b * second[i];
    data.add_attribute({name(3 + c), Origin::Original, Relevance::Relevant, std::nullopt, {}}, std::move(values));
  }
  for (std::size_t k = kXorRelevant + 1; k <= n_attributes; ++k) {
    std::vector<double> values(n);
    for (double& v : values) v = rng.uniform(-1.0, 1.0);
    data.add_attribute({name(k), Origin::Original, Relevance::Irrelevant, std::nullopt, {}}, std::move(values));
  }
  return data;
}

}  // namespace

Dataset generate_xor_set(std::size_t n_objects, std::size_t n_attributes, std::uint64_t seed) {
  if (n_attributes < kXorRelevant) {
    throw InputError("an XOR set needs at least " + std::to_string(kXorRelevant) + " attributes");
  }
  if (n_objects < 4) throw InputError("an XOR set needs at least 4 objects");
  Rng rng(seed);
  std::vector<std::pair<double, double>> base(n_objects);
  for (auto& [x, y] : base) {
    x = rng.uniform(-1.0, 1.0);
    y = rng.uniform(-1.0, 1.0);
  }
  return build_xor(base, n_attributes, rng);
}

Dataset generate_xor_set(std::span<const std::pair<double, double>> base_points, std::size_t n_attributes,
                         std::uint64_t seed) {
  Rng rng(seed);
  return build_xor(base_points, n_attributes, rng);
}

std::vector<GridCell> grid_sizes() {
  static constexpr std::size_t objects[] = {125, 250, 500, 1000, 2000};
  static constexpr std::size_t attributes[] = {125, 250, 500, 1000, 2000, 4000};
  std::vector<GridCell> grid;
  for (std::size_t o : objects) {
    for (std::size_t a : attributes) grid.push_back({o, a});
  }
  return grid;
}

std::vector<Dataset> extend_real_set(const Dataset& data, std::span<const std::size_t> target_totals,
                                     std::uint64_t seed) {
  for (std::size_t total : target_totals) {
    if (total < data.n_attributes()) {
      throw InputError("target total " + std::to_string(total) + " is below the base width " +
                       std::to_string(data.n_attributes()));
    }
  }
  Dataset base = data;
  for (std::size_t j = 0; j < base.n_attributes(); ++j) {
    if (base.meta(j).origin == Origin::Original) base.set_relevance(j, Relevance::Unknown);
  }
  std::vector<Dataset> out;
  out.reserve(target_totals.size());
  for (std::size_t k = 0; k < target_totals.size(); ++k) {
    out.push_back(add_noise_attributes(base, target_totals[k], derive_seed(seed, target_totals[k])));
  }
  return out;
}

}  // namespace allrel
