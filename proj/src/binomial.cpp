#include "allrel/binomial.hpp"

#include <boost/math/distributions/binomial.hpp>
#include <cmath>
#include <cstdint>

#include "allrel/error.hpp"

namespace allrel {

namespace {

constexpr std::size_t kExactLimit = 62;

// Sum of C(n, i) for i in [from, to]; fits in 64 bits for n <= 62.
std::uint64_t choose_sum(std::size_t n, std::size_t from, std::size_t to) {
  std::uint64_t sum = 0;
  std::uint64_t c = 1;  // C(n, 0)
  for (std::size_t i = 0; i <= to; ++i) {
    if (i >= from) sum += c;
    c = static_cast<std::uint64_t>(static_cast<unsigned __int128>(c) * (n - i) / (i + 1));
  }
  return sum;
}

void check(std::size_t trials, std::size_t successes) {
  if (successes > trials) throw InputError("successes exceed trials in binomial tail");
}

}  // namespace

double binomial_upper_tail(std::size_t trials, std::size_t successes) {
  check(trials, successes);
  if (successes == 0) return 1.0;
  if (trials <= kExactLimit) {
    return std::ldexp(static_cast<double>(choose_sum(trials, successes, trials)), -static_cast<int>(trials));
  }
  const boost::math::binomial_distribution<double> dist(static_cast<double>(trials), 0.5);
  return boost::math::cdf(boost::math::complement(dist, static_cast<double>(successes - 1)));
}

double binomial_lower_tail(std::size_t trials, std::size_t successes) {
  check(trials, successes);
  if (successes == trials) return 1.0;
  if (trials <= kExactLimit) {
    return std::ldexp(static_cast<double>(choose_sum(trials, 0, successes)), -static_cast<int>(trials));
  }
  const boost::math::binomial_distribution<double> dist(static_cast<double>(trials), 0.5);
  return boost::math::cdf(dist, static_cast<double>(successes));
}

}  // namespace allrel
