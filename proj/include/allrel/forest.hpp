#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "allrel/dataset.hpp"

namespace allrel {

struct ForestConfig {
  std::size_t num_trees = 500;
  // Attributes tried per split; 0 selects floor(sqrt(nAttributes)) at train time.
  std::size_t mtry = 0;
  // Minimum number of in-bag samples (with multiplicity) in every leaf.
  std::size_t min_node_size = 1;
  std::uint64_t seed = 0;
  bool bootstrap = true;
  // Worker threads; 0 uses all hardware threads. Never affects results.
  std::size_t jobs = 0;

  std::size_t resolved_mtry(std::size_t n_attributes) const;

  // Throws ConfigError when the configuration cannot be used on data with
  // `n_attributes` columns.
  void validate(std::size_t n_attributes) const;
};

struct TreeNode {
  static constexpr std::int32_t kLeaf = -1;

  std::int32_t attribute = kLeaf;
  ClassId label = 0;
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  // Objects with value <= threshold go left.
  double threshold = 0.0;

  bool is_leaf() const noexcept { return attribute == kLeaf; }
};

class Tree {
 public:
  Tree() = default;
  Tree(std::vector<TreeNode> nodes, std::vector<std::uint32_t> in_bag, std::vector<std::uint32_t> out_of_bag)
      : nodes_(std::move(nodes)), in_bag_(std::move(in_bag)), out_of_bag_(std::move(out_of_bag)) {}

  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  // Bootstrap sample as a sorted multiset of object indices.
  std::span<const std::uint32_t> in_bag() const noexcept { return in_bag_; }
  // Objects absent from the bootstrap sample, sorted.
  std::span<const std::uint32_t> out_of_bag() const noexcept { return out_of_bag_; }

  // Attributes appearing in at least one split, ascending.
  std::vector<std::size_t> used_attributes() const;

  // Leaf label reached when attribute values are read through value_of(attribute).
  template <class ValueOf>
  ClassId classify(ValueOf&& value_of) const {
    std::uint32_t at = 0;
    while (!nodes_[at].is_leaf()) {
      const TreeNode& node = nodes_[at];
      at = value_of(static_cast<std::size_t>(node.attribute)) <= node.threshold ? node.left : node.right;
    }
    return nodes_[at].label;
  }

  ClassId classify(const Dataset& data, std::size_t object) const {
    return classify([&](std::size_t a) { return data.column(a)[object]; });
  }

 private:
  std::vector<TreeNode> nodes_;
  std::vector<std::uint32_t> in_bag_;
  std::vector<std::uint32_t> out_of_bag_;
};

class Forest {
 public:
  Forest(std::vector<Tree> trees, ForestConfig config, std::size_t n_objects, std::size_t n_attributes,
         std::vector<std::string> class_labels)
      : trees_(std::move(trees)),
        config_(config),
        n_objects_(n_objects),
        n_attributes_(n_attributes),
        labels_(std::move(class_labels)) {}

  const std::vector<Tree>& trees() const noexcept { return trees_; }
  const ForestConfig& config() const noexcept { return config_; }
  std::size_t n_objects() const noexcept { return n_objects_; }
  std::size_t n_attributes() const noexcept { return n_attributes_; }
  std::size_t n_classes() const noexcept { return labels_.size(); }
  const std::vector<std::string>& class_labels() const noexcept { return labels_; }

  // Throws InputError unless `data` has the shape of the training set.
  void check_compatible(const Dataset& data) const;

 private:
  std::vector<Tree> trees_;
  ForestConfig config_;
  std::size_t n_objects_;
  std::size_t n_attributes_;
  std::vector<std::string> labels_;
};

// Trains config.num_trees Gini trees, each on its own bootstrap sample and
// its own random stream derived from (config.seed, tree index). When
// object_weights is non-empty, bag membership still comes from a uniform
// bootstrap, but the in-bag sample is redrawn with probability proportional
// to the weights; objects not drawn are out-of-bag.
Forest train_forest(const Dataset& data, const ForestConfig& config, std::span<const double> object_weights = {});

// Majority vote over all trees; ties go to the lower class id.
ClassId predict(const Forest& forest, std::span<const double> row);

// Misclassified fraction among objects that are out-of-bag for at least one
// tree, each voted on only by those trees.
double oob_error(const Forest& forest, const Dataset& data);

// Per-object fraction of out-of-bag trees that misclassify it; 0 for objects
// never out-of-bag.
std::vector<double> oob_misclassification_rate(const Forest& forest, const Dataset& data);

}  // namespace allrel
