#pragma once

#include <cstddef>
#include <cstdint>

#include "allrel/dataset.hpp"

namespace allrel {

// Fewest shadows a shadow-extended dataset carries.
inline constexpr std::size_t kMinShadows = 5;

// Appends one shadow per Original attribute: an independent random
// permutation of its values across objects. When fewer than kMinShadows
// originals exist, extra shadows of cyclically chosen originals are added.
Dataset add_shadow_attributes(const Dataset& data, std::uint64_t seed);

// Appends (target_total - nAttributes) columns of i.i.d. uniform [0, 1)
// values, tagged Noise and irrelevant.
Dataset add_noise_attributes(const Dataset& data, std::size_t target_total, std::uint64_t seed);

// Appends permuted copies of `count` Original attributes sampled with
// replacement, tagged PermutedCopy and irrelevant.
Dataset add_permuted_copies(const Dataset& data, std::size_t count, std::uint64_t seed);

}  // namespace allrel
