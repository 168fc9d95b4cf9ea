#pragma once

// Datasets with known ground truth, shared by the unit and acceptance tests.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "allrel/dataset.hpp"
#include "allrel/rng.hpp"

namespace fixtures {

using allrel::AttributeMeta;
using allrel::ClassId;
using allrel::Dataset;
using allrel::Relevance;
using allrel::Rng;

inline std::vector<ClassId> balanced_labels(std::size_t n, Rng& rng) {
  std::vector<ClassId> decision(n);
  for (std::size_t i = 0; i < n; ++i) decision[i] = static_cast<ClassId>(i % 2);
  rng.shuffle(std::span<ClassId>(decision));
  return decision;
}

inline void add_uniform_noise(Dataset& data, std::size_t count, Rng& rng, const std::string& stem = "noise") {
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<double> values(data.n_objects());
    for (double& v : values) v = rng.uniform();
    data.add_attribute({stem + std::to_string(k + 1), allrel::Origin::Original, Relevance::Irrelevant, {}, {}},
                       std::move(values));
  }
}

// Two balanced classes independent of `n_attributes` uniform attributes.
inline Dataset all_noise(std::size_t n_objects, std::size_t n_attributes, std::uint64_t seed) {
  Rng rng(seed);
  Dataset data({"a", "b"}, balanced_labels(n_objects, rng));
  add_uniform_noise(data, n_attributes, rng);
  return data;
}

// Attribute "copy" equals the decision; the rest is noise.
inline Dataset decision_copy(std::size_t n_objects, std::size_t n_noise, std::uint64_t seed) {
  Rng rng(seed);
  auto decision = balanced_labels(n_objects, rng);
  Dataset data({"a", "b"}, decision);
  std::vector<double> copy(decision.begin(), decision.end());
  data.add_attribute({"copy", allrel::Origin::Original, Relevance::Relevant, {}, {}}, std::move(copy));
  add_uniform_noise(data, n_noise, rng);
  return data;
}

// Decision is the sign of attribute "signal" (uniform on [-1, 1]).
inline Dataset sign_of_first(std::size_t n_objects, std::size_t n_noise, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> signal(n_objects);
  std::vector<ClassId> decision(n_objects);
  for (std::size_t i = 0; i < n_objects; ++i) {
    signal[i] = rng.uniform(-1.0, 1.0);
    decision[i] = signal[i] > 0.0 ? 1 : 0;
  }
  Dataset data({"neg", "pos"}, decision);
  data.add_attribute({"signal", allrel::Origin::Original, Relevance::Relevant, {}, {}}, std::move(signal));
  add_uniform_noise(data, n_noise, rng);
  return data;
}

// "primary" decides the class outside a central band of width `band`;
// inside it "secondary" decides. The secondary only matters on the objects
// the primary cannot explain.
inline Dataset two_stage(std::size_t n_objects, std::size_t n_noise, double band, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> primary(n_objects), secondary(n_objects);
  std::vector<ClassId> decision(n_objects);
  const double low = 0.5 - band / 2.0;
  const double high = 0.5 + band / 2.0;
  for (std::size_t i = 0; i < n_objects; ++i) {
    primary[i] = rng.uniform();
    secondary[i] = rng.uniform();
    if (primary[i] < low) {
      decision[i] = 0;
    } else if (primary[i] > high) {
      decision[i] = 1;
    } else {
      decision[i] = secondary[i] > 0.5 ? 1 : 0;
    }
  }
  Dataset data({"a", "b"}, decision);
  data.add_attribute({"primary", allrel::Origin::Original, Relevance::Relevant, {}, {}}, std::move(primary));
  data.add_attribute({"secondary", allrel::Origin::Original, Relevance::Relevant, {}, {}}, std::move(secondary));
  add_uniform_noise(data, n_noise, rng);
  return data;
}

}  // namespace fixtures
