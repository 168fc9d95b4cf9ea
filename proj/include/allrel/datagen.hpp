#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "allrel/dataset.hpp"

namespace allrel {

// Number of attributes relevant by design in an XOR set.
inline constexpr std::size_t kXorRelevant = 10;

// XOR geometry set: two base attributes uniform on [-1, 1] whose sign bits
// XOR to the decision, eight fixed random linear combinations of them, and
// uniform [-1, 1] noise up to n_attributes. The first ten are relevant.
Dataset generate_xor_set(std::size_t n_objects, std::size_t n_attributes, std::uint64_t seed);

// XOR set built on caller-supplied base points (the combinations and noise
// are still random). Used to pin the decision rule.
Dataset generate_xor_set(std::span<const std::pair<double, double>> base_points, std::size_t n_attributes,
                         std::uint64_t seed);

struct GridCell {
  std::size_t n_objects;
  std::size_t n_attributes;

  bool operator==(const GridCell&) const = default;
};

// The 5 x 6 object-count x attribute-count grid, row-major by object count.
std::vector<GridCell> grid_sizes();

// One noise-extended copy of `data` per requested total width. Original
// attributes get unknown relevance, noise is irrelevant.
std::vector<Dataset> extend_real_set(const Dataset& data, std::span<const std::size_t> target_totals,
                                     std::uint64_t seed);

}  // namespace allrel
