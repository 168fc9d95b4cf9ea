#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "allrel/datagen.hpp"
#include "allrel/error.hpp"
#include "support/fixtures.hpp"

using namespace allrel;

TEST_CASE("XOR set layout") {
  const Dataset data = generate_xor_set(125, 125, 1);
  CHECK(data.n_objects() == 125);
  CHECK(data.n_attributes() == 125);
  std::size_t relevant = 0;
  for (std::size_t j = 0; j < 125; ++j) {
    CHECK(data.meta(j).name == "V" + std::to_string(j + 1));
    if (data.meta(j).relevance == Relevance::Relevant) {
      ++relevant;
      CHECK(j < 10);
    }
  }
  CHECK(relevant == 10);
  CHECK(data.n_classes() == 2);
}

TEST_CASE("decision is the XOR of the base signs") {
  const std::vector<std::pair<double, double>> points{{0.5, 0.5}, {-0.5, 0.5}, {0.5, -0.5}, {-0.5, -0.5}};
  const Dataset data = generate_xor_set(points, 12, 3);
  CHECK(data.decision()[0] == 0);
  CHECK(data.decision()[1] == 1);
  CHECK(data.decision()[2] == 1);
  CHECK(data.decision()[3] == 0);
  const Dataset random = generate_xor_set(500, 10, 2);
  for (std::size_t i = 0; i < 500; ++i) {
    const bool x = random.column(0)[i] > 0.0;
    const bool y = random.column(1)[i] > 0.0;
    CHECK(random.decision()[i] == static_cast<ClassId>(x != y));
  }
}

TEST_CASE("classes are balanced") {
  const Dataset data = generate_xor_set(10000, 10, 4);
  double ones = 0;
  for (auto c : data.decision()) ones += c;
  CHECK(std::abs(ones / 10000.0 - 0.5) <= 0.02);
}

TEST_CASE("combinations are exact linear functions of the base pair") {
  const Dataset data = generate_xor_set(300, 10, 5);
  const auto x = data.column(0);
  const auto y = data.column(1);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  const double det = sxx * syy - sxy * sxy;
  for (std::size_t j = 2; j < 10; ++j) {
    const auto z = data.column(j);
    double sxz = 0, syz = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      sxz += x[i] * z[i];
      syz += y[i] * z[i];
    }
    const double a = (sxz * syy - syz * sxy) / det;
    const double b = (syz * sxx - sxz * sxy) / det;
    CHECK(a >= -1.0);
    CHECK(a <= 1.0);
    CHECK(b >= -1.0);
    CHECK(b <= 1.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) worst = std::max(worst, std::abs(z[i] - a * x[i] - b * y[i]));
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("value ranges") {
  const Dataset data = generate_xor_set(200, 40, 6);
  for (std::size_t j : {0u, 1u, 10u, 25u, 39u}) {
    for (double v : data.column(j)) {
      CHECK(v >= -1.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("noise is independent of the decision") {
  double total = 0.0;
  const std::size_t seeds = 10, n = 400;
  for (std::uint64_t seed = 0; seed < seeds; ++seed) {
    const Dataset data = generate_xor_set(n, 60, 100 + seed);
    double mean_abs = 0.0;
    for (std::size_t j = 10; j < 60; ++j) {
      const auto v = data.column(j);
      double mv = 0, md = 0;
      for (std::size_t i = 0; i < n; ++i) {
        mv += v[i] / n;
        md += data.decision()[i] / static_cast<double>(n);
      }
      double cov = 0, vv = 0, vd = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const double a = v[i] - mv, b = data.decision()[i] - md;
        cov += a * b;
        vv += a * a;
        vd += b * b;
      }
      mean_abs += std::abs(cov / std::sqrt(vv * vd)) / 50.0;
    }
    total += mean_abs / seeds;
  }
  CHECK(total <= 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("generation is deterministic per seed") {
  const Dataset a = generate_xor_set(50, 20, 9);
  const Dataset b = generate_xor_set(50, 20, 9);
  const Dataset c = generate_xor_set(50, 20, 10);
  for (std::size_t j = 0; j < 20; ++j) CHECK(std::ranges::equal(a.column(j), b.column(j)));
  CHECK_FALSE(std::ranges::equal(a.column(0), c.column(0)));
  CHECK_FALSE(std::ranges::equal(a.column(5), c.column(5)));
}

TEST_CASE("XOR parameter validation") {
  CHECK_THROWS_AS(generate_xor_set(100, 9, 1), InputError);
  CHECK_THROWS_AS(generate_xor_set(3, 20, 1), InputError);
}

TEST_CASE("the benchmark grid") {
  const auto grid = grid_sizes();
  CHECK(grid.size() == 30);
  CHECK(grid.front() == GridCell{125, 125});
  CHECK(grid[1] == GridCell{125, 250});
  CHECK(grid[6] == GridCell{250, 125});
  CHECK(grid.back() == GridCell{2000, 4000});
}

TEST_CASE("real-set extension") {
  Dataset base = fixtures::all_noise(60, 18, 2);
  base.set_relevance(0, Relevance::Relevant);
  const std::vector<std::size_t> totals{125, 250, 500, 1000, 2000};
  const auto sets = extend_real_set(base, totals, 3);
  REQUIRE(sets.size() == 5);
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK(sets[k].n_attributes() == totals[k]);
    CHECK(sets[k].meta(0).relevance == Relevance::Unknown);
    CHECK(sets[k].meta(totals[k] - 1).origin == Origin::Noise);
    CHECK(sets[k].meta(totals[k] - 1).relevance == Relevance::Irrelevant);
  }
  const std::vector<std::size_t> same{18};
  const auto pass = extend_real_set(base, same, 3);
  REQUIRE(pass.size() == 1);
  CHECK(pass[0].n_attributes() == 18);
  const std::vector<std::size_t> narrow{10};
  CHECK_THROWS_AS(extend_real_set(base, narrow, 3), InputError);
}
