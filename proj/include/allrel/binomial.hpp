#pragma once

#include <cstddef>

namespace allrel {

// Tails of Binomial(trials, 1/2). Exact (correctly rounded) up to 62 trials.
double binomial_upper_tail(std::size_t trials, std::size_t successes);  // P(X >= successes)
double binomial_lower_tail(std::size_t trials, std::size_t successes);  // P(X <= successes)

}  // namespace allrel
