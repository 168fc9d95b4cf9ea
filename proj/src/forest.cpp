#include "allrel/forest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "allrel/error.hpp"
#include "allrel/parallel.hpp"
#include "allrel/rng.hpp"

namespace allrel {

std::size_t ForestConfig::resolved_mtry(std::size_t n_attributes) const {
  if (mtry != 0) return mtry;
  const auto root = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n_attributes))));
  return std::max<std::size_t>(1, root);
}

void ForestConfig::validate(std::size_t n_attributes) const {
  if (num_trees < 1) throw ConfigError("numTrees must be at least 1");
  if (min_node_size < 1) throw ConfigError("minNodeSize must be at least 1");
  if (n_attributes == 0) throw InputError("dataset has no attributes");
  const std::size_t m = resolved_mtry(n_attributes);
  if (m > n_attributes) {
    throw ConfigError("mtry " + std::to_string(m) + " exceeds the number of attributes " +
                      std::to_string(n_attributes));
  }
}

std::vector<std::size_t> Tree::used_attributes() const {
  std::vector<std::size_t> used;
  for (const TreeNode& node : nodes_) {
    if (!node.is_leaf()) used.push_back(static_cast<std::size_t>(node.attribute));
  }
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  return used;
}

void Forest::check_compatible(const Dataset& data) const {
  if (data.n_objects() != n_objects_ || data.n_attributes() != n_attributes_) {
    throw InputError("dataset shape " + std::to_string(data.n_objects()) + "x" + std::to_string(data.n_attributes()) +
                     " does not match the forest's training data " + std::to_string(n_objects_) + "x" +
                     std::to_string(n_attributes_));
  }
}

namespace {

// Dense ranks of every column, shared read-only by all tree builders.
struct RankedColumns {
  std::vector<std::vector<std::uint32_t>> rank;
  std::vector<std::vector<double>> distinct;
  // Objects in ascending value order.
  std::vector<std::vector<std::uint32_t>> sorted;

  explicit RankedColumns(const Dataset& data)
      : rank(data.n_attributes()), distinct(data.n_attributes()), sorted(data.n_attributes()) {
    for (std::size_t j = 0; j < data.n_attributes(); ++j) {
      const auto values = data.column(j);
      auto& order = sorted[j];
      order.resize(data.n_objects());
      std::iota(order.begin(), order.end(), 0u);
      std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return values[a] < values[b]; });
      auto& r = rank[j];
      auto& d = distinct[j];
      r.resize(values.size());
      for (std::uint32_t object : order) {
        if (d.empty() || d.back() != values[object]) d.push_back(values[object]);
        r[object] = static_cast<std::uint32_t>(d.size() - 1);
      }
    }
  }
};

struct SplitChoice {
  double score = -std::numeric_limits<double>::infinity();
  std::int32_t attribute = TreeNode::kLeaf;
  std::uint32_t rank_low = 0;
  std::uint32_t rank_high = 0;
};

constexpr unsigned kClassBits = 16;
constexpr std::uint64_t kClassMask = (std::uint64_t{1} << kClassBits) - 1;

class TreeBuilder {
 public:
  TreeBuilder(const Dataset& data, const RankedColumns& ranked, const ForestConfig& config,
              std::span<const double> cumulative_weights, std::uint64_t seed)
      : data_(data),
        ranked_(ranked),
        config_(config),
        cumulative_weights_(cumulative_weights),
        rng_(seed),
        mtry_(config.resolved_mtry(data.n_attributes())),
        n_classes_(data.n_classes()),
        candidates_(data.n_attributes()),
        multiplicity_(data.n_objects(), 0) {
    std::iota(candidates_.begin(), candidates_.end(), 0u);
  }

  Tree build() {
    const std::size_t n = data_.n_objects();
    draw_sample();
    std::vector<std::uint32_t> in_bag = samples_;
    std::sort(in_bag.begin(), in_bag.end());
    std::vector<std::uint32_t> out_of_bag;
    std::vector<bool> present(n, false);
    for (std::uint32_t s : in_bag) present[s] = true;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (!present[i]) out_of_bag.push_back(i);
    }

    left_counts_.assign(n_classes_, 0);
    right_counts_.assign(n_classes_, 0);
    nodes_.clear();
    nodes_.emplace_back();
    struct Pending {
      std::uint32_t node;
      std::size_t begin;
      std::size_t end;
    };
    std::vector<Pending> stack{{0, 0, samples_.size()}};
    while (!stack.empty()) {
      const Pending job = stack.back();
      stack.pop_back();
      const SplitChoice split = grow(job.node, job.begin, job.end);
      if (split.attribute == TreeNode::kLeaf) continue;
      const auto& rank = ranked_.rank[static_cast<std::size_t>(split.attribute)];
      const auto middle = std::partition(samples_.begin() + static_cast<std::ptrdiff_t>(job.begin),
                                         samples_.begin() + static_cast<std::ptrdiff_t>(job.end),
                                         [&](std::uint32_t s) { return rank[s] <= split.rank_low; });
      const auto mid = static_cast<std::size_t>(middle - samples_.begin());
      const auto left = static_cast<std::uint32_t>(nodes_.size());
      nodes_.emplace_back();
      nodes_.emplace_back();
      nodes_[job.node].left = left;
      nodes_[job.node].right = left + 1;
      // Right pushed first so the left subtree is expanded first.
      stack.push_back({left + 1, mid, job.end});
      stack.push_back({left, job.begin, mid});
    }
    return Tree(std::move(nodes_), std::move(in_bag), std::move(out_of_bag));
  }

 private:
  void draw_sample() {
    const std::size_t n = data_.n_objects();
    samples_.resize(n);
    if (!config_.bootstrap) {
      std::iota(samples_.begin(), samples_.end(), 0u);
      return;
    }
    if (cumulative_weights_.empty()) {
      for (auto& s : samples_) s = static_cast<std::uint32_t>(rng_.below(n));
      return;
    }
    // Bag membership comes from an ordinary bootstrap so every object keeps
    // its usual chance of being out-of-bag; the weights then decide how
    // often each in-bag object is drawn.
    std::vector<char> in_bag(n, 0);
    for (std::size_t i = 0; i < n; ++i) in_bag[rng_.below(n)] = 1;
    std::vector<std::uint32_t> members;
    std::vector<double> cumulative;
    double total = 0.0;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (!in_bag[i]) continue;
      const double w = cumulative_weights_[i] - (i == 0 ? 0.0 : cumulative_weights_[i - 1]);
      if (!(w > 0.0)) continue;
      total += w;
      members.push_back(i);
      cumulative.push_back(total);
    }
    if (members.empty()) {
      // No positive weight in the bag: fall back to all weighted objects.
      members.clear();
      for (std::uint32_t i = 0; i < n; ++i) members.push_back(i);
      cumulative.assign(cumulative_weights_.begin(), cumulative_weights_.end());
      total = cumulative.back();
    }
    for (auto& s : samples_) {
      const double u = rng_.uniform() * total;
      const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      s = members[static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                                                      static_cast<std::ptrdiff_t>(members.size() - 1)))];
    }
  }

  // Sets the label of `node`, and its split when one is worth making.
  SplitChoice grow(std::uint32_t node, std::size_t begin, std::size_t end) {
    const auto classes = data_.decision();
    std::vector<std::int64_t> counts(n_classes_, 0);
    for (std::size_t i = begin; i < end; ++i) ++counts[classes[samples_[i]]];
    const auto majority = std::max_element(counts.begin(), counts.end()) - counts.begin();
    nodes_[node].label = static_cast<ClassId>(majority);

    const auto size = static_cast<std::int64_t>(end - begin);
    const auto min_leaf = static_cast<std::int64_t>(config_.min_node_size);
    if (counts[static_cast<std::size_t>(majority)] == size || size < 2 * min_leaf) return {};

    const SplitChoice split = best_split(begin, end, counts);
    if (split.attribute == TreeNode::kLeaf) return split;
    double parent = 0.0;
    for (std::int64_t c : counts) parent += static_cast<double>(c * c);
    parent /= static_cast<double>(size);
    // No impurity decrease: keep the leaf.
    if (!(split.score > parent * (1.0 + 1e-12))) return {};

    const auto& distinct = ranked_.distinct[static_cast<std::size_t>(split.attribute)];
    const double low = distinct[split.rank_low];
    const double high = distinct[split.rank_high];
    double threshold = std::midpoint(low, high);
    if (!(threshold < high)) threshold = low;
    nodes_[node].attribute = split.attribute;
    nodes_[node].threshold = threshold;
    return split;
  }

  // Best Gini split among mtry random attributes. Minimising weighted Gini
  // impurity equals maximising sum_k L_k^2 / nL + sum_k R_k^2 / nR. Candidates
  // are scanned by ascending attribute and threshold and only a strictly
  // better score replaces the incumbent.
  SplitChoice best_split(std::size_t begin, std::size_t end, const std::vector<std::int64_t>& counts) {
    for (std::size_t i = 0; i < mtry_; ++i) {
      const auto j = i + static_cast<std::size_t>(rng_.below(candidates_.size() - i));
      std::swap(candidates_[i], candidates_[j]);
    }
    chosen_.assign(candidates_.begin(), candidates_.begin() + static_cast<std::ptrdiff_t>(mtry_));
    std::sort(chosen_.begin(), chosen_.end());

    const auto classes = data_.decision();
    const auto size = static_cast<std::int64_t>(end - begin);
    const auto min_leaf = static_cast<std::int64_t>(config_.min_node_size);
    std::int64_t parent_sum2 = 0;
    for (std::int64_t c : counts) parent_sum2 += c * c;

    // Large nodes scan the presorted column once; small ones sort their own
    // keys. Both visit identical thresholds with identical integer sums.
    const auto m = static_cast<double>(size);
    const bool scan = m * std::log2(m) > 2.0 * static_cast<double>(data_.n_objects());
    if (scan) {
      for (std::size_t i = begin; i < end; ++i) ++multiplicity_[samples_[i]];
    }

    SplitChoice best;
    auto consider = [&](std::uint32_t attribute, std::int64_t n_left, std::int64_t left_sum2, std::int64_t right_sum2,
                        std::uint32_t r, std::uint32_t r_next) {
      const std::int64_t n_right = size - n_left;
      if (n_left < min_leaf || n_right < min_leaf) return;
      // One correctly rounded division of exact integers: equal fractions
      // give equal doubles, so ties resolve by scan order alone.
      const double score = static_cast<double>(left_sum2 * n_right + right_sum2 * n_left) /
                           static_cast<double>(n_left * n_right);
      if (score > best.score) {
        best.score = score;
        best.attribute = static_cast<std::int32_t>(attribute);
        best.rank_low = r;
        best.rank_high = r_next;
      }
    };

    for (std::uint32_t attribute : chosen_) {
      const auto& rank = ranked_.rank[attribute];
      std::fill(left_counts_.begin(), left_counts_.end(), 0);
      std::copy(counts.begin(), counts.end(), right_counts_.begin());
      std::int64_t left_sum2 = 0;
      std::int64_t right_sum2 = parent_sum2;
      std::int64_t n_left = 0;

      if (scan) {
        bool started = false;
        std::uint32_t previous = 0;
        for (std::uint32_t object : ranked_.sorted[attribute]) {
          const std::int64_t w = multiplicity_[object];
          if (w == 0) continue;
          const std::uint32_t r = rank[object];
          if (started && r != previous) consider(attribute, n_left, left_sum2, right_sum2, previous, r);
          started = true;
          previous = r;
          const std::size_t c = classes[object];
          left_sum2 += (2 * left_counts_[c] + w) * w;
          left_counts_[c] += w;
          right_sum2 -= (2 * right_counts_[c] - w) * w;
          right_counts_[c] -= w;
          n_left += w;
        }
        continue;
      }

      keys_.clear();
      for (std::size_t i = begin; i < end; ++i) {
        const std::uint32_t s = samples_[i];
        keys_.push_back((std::uint64_t{rank[s]} << kClassBits) | classes[s]);
      }
      std::sort(keys_.begin(), keys_.end());
      if ((keys_.front() >> kClassBits) == (keys_.back() >> kClassBits)) continue;
      for (std::int64_t i = 0; i + 1 < size; ++i) {
        const std::uint64_t key = keys_[static_cast<std::size_t>(i)];
        const auto c = static_cast<std::size_t>(key & kClassMask);
        left_sum2 += 2 * left_counts_[c] + 1;
        ++left_counts_[c];
        right_sum2 -= 2 * right_counts_[c] - 1;
        --right_counts_[c];
        ++n_left;
        const auto r = static_cast<std::uint32_t>(key >> kClassBits);
        const auto r_next = static_cast<std::uint32_t>(keys_[static_cast<std::size_t>(i + 1)] >> kClassBits);
        if (r != r_next) consider(attribute, n_left, left_sum2, right_sum2, r, r_next);
      }
    }

    if (scan) {
      for (std::size_t i = begin; i < end; ++i) multiplicity_[samples_[i]] = 0;
    }
    return best;
  }

  const Dataset& data_;
  const RankedColumns& ranked_;
  const ForestConfig& config_;
  std::span<const double> cumulative_weights_;
  Rng rng_;
  std::size_t mtry_;
  std::size_t n_classes_;

  std::vector<std::uint32_t> candidates_;
  std::vector<std::uint32_t> chosen_;
  std::vector<std::uint32_t> samples_;
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> multiplicity_;
  std::vector<std::int64_t> left_counts_;
  std::vector<std::int64_t> right_counts_;
  std::vector<TreeNode> nodes_;
};

ClassId vote(std::span<const std::uint32_t> votes) {
  return static_cast<ClassId>(std::max_element(votes.begin(), votes.end()) - votes.begin());
}

}  // namespace

Forest train_forest(const Dataset& data, const ForestConfig& config, std::span<const double> object_weights) {
  if (data.n_objects() == 0) throw InputError("dataset has no objects");
  config.validate(data.n_attributes());
  data.validate_for_training();
  if (data.n_classes() > kClassMask + 1) throw InputError("too many decision classes");
  // Split scores multiply three sample counts in 64-bit integers.
  if (data.n_objects() > 2'000'000) throw InputError("too many objects for exact split scoring");

  std::vector<double> cumulative;
  if (!object_weights.empty()) {
    if (object_weights.size() != data.n_objects()) throw InputError("object weight count does not match objects");
    cumulative.resize(object_weights.size());
    double total = 0.0;
    for (std::size_t i = 0; i < object_weights.size(); ++i) {
      if (!(object_weights[i] >= 0.0) || !std::isfinite(object_weights[i])) {
        throw InputError("object weights must be finite and non-negative");
      }
      total += object_weights[i];
      cumulative[i] = total;
    }
    if (!(total > 0.0)) throw InputError("object weights sum to zero");
  }

  const RankedColumns ranked(data);
  std::vector<Tree> trees(config.num_trees);
  parallel_for(config.num_trees, config.jobs, [&](std::size_t t) {
    TreeBuilder builder(data, ranked, config, cumulative, derive_seed(config.seed, t));
    trees[t] = builder.build();
  });
  return Forest(std::move(trees), config, data.n_objects(), data.n_attributes(), data.class_labels());
}

ClassId predict(const Forest& forest, std::span<const double> row) {
  if (row.size() != forest.n_attributes()) {
    throw InputError("row has " + std::to_string(row.size()) + " values, forest expects " +
                     std::to_string(forest.n_attributes()));
  }
  std::vector<std::uint32_t> votes(forest.n_classes(), 0);
  for (const Tree& tree : forest.trees()) ++votes[tree.classify([&](std::size_t a) { return row[a]; })];
  return vote(votes);
}

namespace {

// Out-of-bag vote table, objects x classes.
std::vector<std::uint32_t> oob_votes(const Forest& forest, const Dataset& data) {
  forest.check_compatible(data);
  const std::size_t k = forest.n_classes();
  std::vector<std::uint32_t> votes(data.n_objects() * k, 0);
  for (const Tree& tree : forest.trees()) {
    for (std::uint32_t object : tree.out_of_bag()) ++votes[object * k + tree.classify(data, object)];
  }
  return votes;
}

}  // namespace

double oob_error(const Forest& forest, const Dataset& data) {
  const auto votes = oob_votes(forest, data);
  const std::size_t k = forest.n_classes();
  std::size_t voted = 0;
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < data.n_objects(); ++i) {
    const std::span<const std::uint32_t> row(votes.data() + i * k, k);
    if (std::all_of(row.begin(), row.end(), [](std::uint32_t v) { return v == 0; })) continue;
    ++voted;
    if (vote(row) != data.decision()[i]) ++wrong;
  }
  return voted == 0 ? 0.0 : static_cast<double>(wrong) / static_cast<double>(voted);
}

std::vector<double> oob_misclassification_rate(const Forest& forest, const Dataset& data) {
  const auto votes = oob_votes(forest, data);
  const std::size_t k = forest.n_classes();
  std::vector<double> rate(data.n_objects(), 0.0);
  for (std::size_t i = 0; i < data.n_objects(); ++i) {
    std::uint32_t total = 0;
    for (std::size_t c = 0; c < k; ++c) total += votes[i * k + c];
    if (total == 0) continue;
    const std::uint32_t right = votes[i * k + data.decision()[i]];
    rate[i] = static_cast<double>(total - right) / static_cast<double>(total);
  }
  return rate;
}

}  // namespace allrel
