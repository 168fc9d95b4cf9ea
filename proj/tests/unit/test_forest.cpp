#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "allrel/datagen.hpp"
#include "allrel/error.hpp"
#include "allrel/forest.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace allrel;

namespace {

Dataset integer_grid(std::size_t n_objects, std::size_t n_attributes, std::size_t n_classes, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ClassId> decision(n_objects);
  for (auto& c : decision) c = static_cast<ClassId>(rng.below(n_classes));
  decision[0] = 0;
  decision[1] = 1;
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < n_classes; ++c) labels.push_back("c" + std::to_string(c));
  Dataset data(labels, decision);
  for (std::size_t a = 0; a < n_attributes; ++a) {
    std::vector<double> values(n_objects);
    // Few distinct values, so ties in values and in scores are common.
    for (std::size_t i = 0; i < n_objects; ++i) {
      values[i] = static_cast<double>(rng.below(5)) + (a % 2 == 0 ? 0.5 * decision[i] : 0.0);
    }
    data.add_attribute({"a" + std::to_string(a), Origin::Original, Relevance::Unknown, {}, {}}, std::move(values));
  }
  return data;
}

Forest leaf_forest(const std::vector<ClassId>& votes) {
  std::vector<Tree> trees;
  for (ClassId v : votes) {
    TreeNode leaf;
    leaf.label = v;
    trees.emplace_back(std::vector<TreeNode>{leaf}, std::vector<std::uint32_t>{0}, std::vector<std::uint32_t>{});
  }
  return Forest(std::move(trees), ForestConfig{}, 1, 1, {"A", "B"});
}

bool same_forest(const Forest& a, const Forest& b) {
  if (a.trees().size() != b.trees().size()) return false;
  for (std::size_t t = 0; t < a.trees().size(); ++t) {
    const auto& na = a.trees()[t].nodes();
    const auto& nb = b.trees()[t].nodes();
    if (na.size() != nb.size()) return false;
    for (std::size_t k = 0; k < na.size(); ++k) {
      if (na[k].attribute != nb[k].attribute || na[k].threshold != nb[k].threshold || na[k].label != nb[k].label ||
          na[k].left != nb[k].left || na[k].right != nb[k].right) {
        return false;
      }
    }
    if (!std::ranges::equal(a.trees()[t].in_bag(), b.trees()[t].in_bag())) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("two objects are separated whenever both are in the bag") {
  Dataset data({"A", "B"}, {0, 1});
  data.add_attribute({"x", Origin::Original, Relevance::Unknown, {}, {}}, {0.0, 1.0});
  int both = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    ForestConfig config;
    config.num_trees = 1;
    config.seed = seed;
    const Forest forest = train_forest(data, config);
    const Tree& tree = forest.trees()[0];
    const auto bag = tree.in_bag();
    const bool has0 = std::find(bag.begin(), bag.end(), 0u) != bag.end();
    const bool has1 = std::find(bag.begin(), bag.end(), 1u) != bag.end();
    if (!(has0 && has1)) {
      CHECK(tree.nodes().size() == 1);
      continue;
    }
    ++both;
    REQUIRE(tree.nodes().size() == 3);
    CHECK(tree.nodes()[0].threshold == 0.5);
    CHECK(tree.classify(data, 0) == 0);
    CHECK(tree.classify(data, 1) == 1);
  }
  CHECK(both > 5);
}

TEST_CASE("forest on XOR data beats the no-information rate") {
  const Dataset data = generate_xor_set(1000, 125, 3);
  ForestConfig config;
  config.seed = 1;
  const Forest forest = train_forest(data, config);
  CHECK(forest.trees().size() == 500);
  CHECK(oob_error(forest, data) < 0.3);
}

TEST_CASE("training is deterministic and independent of the job count") {
  const Dataset data = generate_xor_set(200, 20, 5);
  ForestConfig config;
  config.num_trees = 30;
  config.seed = 77;
  config.jobs = 1;
  const Forest a = train_forest(data, config);
  config.jobs = 4;
  const Forest b = train_forest(data, config);
  CHECK(same_forest(a, b));
  config.seed = 78;
  CHECK_FALSE(same_forest(a, train_forest(data, config)));
}

TEST_CASE("training errors") {
  Dataset single({"A", "B"}, {0, 0, 0});
  single.add_attribute({"x", Origin::Original, Relevance::Unknown, {}, {}}, {1.0, 2.0, 3.0});
  CHECK_THROWS_AS(train_forest(single, ForestConfig{}), TrainingError);

  const Dataset data = fixtures::all_noise(20, 3, 1);
  ForestConfig config;
  config.mtry = 4;
  CHECK_THROWS_AS(train_forest(data, config), ConfigError);
  config.mtry = 0;
  config.num_trees = 0;
  CHECK_THROWS_AS(train_forest(data, config), ConfigError);
  config.num_trees = 1;
  config.min_node_size = 0;
  CHECK_THROWS_AS(train_forest(data, config), ConfigError);

  CHECK_THROWS_AS(train_forest(Dataset{}, ForestConfig{}), InputError);
  Dataset no_attributes({"A", "B"}, {0, 1});
  CHECK_THROWS_AS(train_forest(no_attributes, ForestConfig{}), InputError);
}

TEST_CASE("default mtry is floor(sqrt(p))") {
  ForestConfig config;
  CHECK(config.resolved_mtry(1) == 1);
  CHECK(config.resolved_mtry(125) == 11);
  CHECK(config.resolved_mtry(2000) == 44);
  config.mtry = 7;
  CHECK(config.resolved_mtry(2000) == 7);
}

TEST_CASE("prediction is a majority vote with ties to the lower class") {
  const std::vector<double> row{0.0};
  CHECK(predict(leaf_forest({1}), row) == 1);
  CHECK(predict(leaf_forest({0, 0, 1}), row) == 0);
  CHECK(predict(leaf_forest({1, 1, 0}), row) == 1);
  CHECK(predict(leaf_forest({0, 1}), row) == 0);
  CHECK(predict(leaf_forest({1, 0}), row) == 0);
  CHECK_THROWS_AS(predict(leaf_forest({0}), std::vector<double>{1.0, 2.0}), InputError);
}

TEST_CASE("out-of-bag error on separable and on random data") {
  {
    const Dataset data = fixtures::sign_of_first(200, 0, 4);
    ForestConfig config;
    config.seed = 2;
    CHECK(oob_error(train_forest(data, config), data) <= 0.05);
  }
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Dataset data = fixtures::all_noise(200, 10, 100 + seed);
    ForestConfig config;
    config.seed = seed;
    config.num_trees = 200;
    const double error = oob_error(train_forest(data, config), data);
    CHECK(std::abs(error - 0.5) <= 0.2);
    total += error;
  }
  CHECK(std::abs(total / 10 - 0.5) <= 0.1);
}

TEST_CASE("bag and out-of-bag sets partition the objects") {
  const Dataset data = fixtures::all_noise(100, 3, 8);
  ForestConfig config;
  config.num_trees = 1000;
  config.seed = 3;
  const Forest forest = train_forest(data, config);
  std::vector<std::size_t> oob_count(100, 0);
  for (const Tree& tree : forest.trees()) {
    CHECK(tree.in_bag().size() == 100);
    CHECK(std::is_sorted(tree.in_bag().begin(), tree.in_bag().end()));
    std::vector<char> seen(100, 0);
    for (auto i : tree.in_bag()) seen[i] = 1;
    for (auto i : tree.out_of_bag()) {
      CHECK(seen[i] == 0);
      seen[i] = 2;
      ++oob_count[i];
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](char s) { return s != 0; }));
  }
  // Each frequency is a Binomial(1000, q) mean with sd about 0.015: the
  // average over objects gets the 0.02 band, single objects a 5 sd band.
  const double expected = std::pow(1.0 - 1.0 / 100.0, 100.0);
  const double sd = std::sqrt(expected * (1.0 - expected) / 1000.0);
  double mean = 0.0;
  for (std::size_t c : oob_count) {
    const double frequency = static_cast<double>(c) / 1000.0;
    CHECK(std::abs(frequency - expected) <= 5.0 * sd);
    mean += frequency / 100.0;
  }
  CHECK(std::abs(mean - expected) <= 0.02);
}

TEST_CASE("splits match exhaustive re-evaluation") {
  struct Case {
    std::size_t objects, attributes, classes, min_leaf;
  };
  for (const Case c : {Case{30, 4, 2, 1}, Case{60, 3, 3, 1}, Case{80, 5, 2, 3}, Case{40, 2, 4, 2}}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Dataset data = integer_grid(c.objects, c.attributes, c.classes, seed);
      ForestConfig config;
      config.num_trees = 10;
      config.mtry = c.attributes;
      config.min_node_size = c.min_leaf;
      config.seed = seed;
      const Forest forest = train_forest(data, config);
      for (const Tree& tree : forest.trees()) {
        const std::string failure = oracles::check_tree_splits(tree, data, c.min_leaf, 64);
        CHECK_MESSAGE(failure.empty(), failure);
      }
    }
  }
}

TEST_CASE("splits on continuous data match re-evaluation, including the presorted path") {
  const Dataset data = generate_xor_set(400, 10, 6);
  ForestConfig config;
  config.num_trees = 5;
  config.mtry = 10;
  config.seed = 4;
  const Forest forest = train_forest(data, config);
  for (const Tree& tree : forest.trees()) {
    const std::string failure = oracles::check_tree_splits(tree, data, 1, 3);
    CHECK_MESSAGE(failure.empty(), failure);
  }
}

TEST_CASE("leaves respect the minimum node size") {
  const Dataset data = generate_xor_set(300, 12, 2);
  ForestConfig config;
  config.num_trees = 20;
  config.min_node_size = 5;
  config.seed = 9;
  const Forest forest = train_forest(data, config);
  for (const Tree& tree : forest.trees()) {
    std::vector<std::size_t> leaf_size(tree.nodes().size(), 0);
    for (auto s : tree.in_bag()) {
      std::uint32_t at = 0;
      while (!tree.nodes()[at].is_leaf()) {
        const auto& node = tree.nodes()[at];
        at = data.column(static_cast<std::size_t>(node.attribute))[s] <= node.threshold ? node.left : node.right;
      }
      ++leaf_size[at];
    }
    for (std::size_t k = 0; k < tree.nodes().size(); ++k) {
      if (tree.nodes()[k].is_leaf()) CHECK(leaf_size[k] >= 5);
    }
  }
}

TEST_CASE("weighted bagging never draws zero-weight objects") {
  const Dataset data = fixtures::all_noise(50, 4, 2);
  std::vector<double> weights(50, 1.0);
  for (std::size_t i = 0; i < 25; ++i) weights[i] = 0.0;
  ForestConfig config;
  config.num_trees = 50;
  config.seed = 1;
  const Forest forest = train_forest(data, config, weights);
  for (const Tree& tree : forest.trees()) {
    CHECK(tree.in_bag().size() == 50);
    for (auto i : tree.in_bag()) CHECK(i >= 25);
  }
  CHECK_THROWS_AS(train_forest(data, config, std::vector<double>(3, 1.0)), InputError);
  CHECK_THROWS_AS(train_forest(data, config, std::vector<double>(50, 0.0)), InputError);
  CHECK_THROWS_AS(train_forest(data, config, std::vector<double>(50, -1.0)), InputError);
}

TEST_CASE("out-of-bag misclassification rates") {
  const Dataset data = fixtures::sign_of_first(100, 2, 3);
  ForestConfig config;
  config.seed = 5;
  config.num_trees = 100;
  const Forest forest = train_forest(data, config);
  const auto rate = oob_misclassification_rate(forest, data);
  REQUIRE(rate.size() == 100);
  double mean = 0.0;
  for (double r : rate) {
    CHECK(r >= 0.0);
    CHECK(r <= 1.0);
    mean += r / 100.0;
  }
  CHECK(mean < 0.1);
  CHECK_THROWS_AS(oob_error(forest, fixtures::sign_of_first(99, 2, 3)), InputError);
}
