#include "allrel/importance.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "allrel/error.hpp"
#include "allrel/parallel.hpp"
#include "allrel/rng.hpp"

namespace allrel {

std::vector<double> ImportanceReport::z_scores() const {
  std::vector<double> out;
  out.reserve(attributes.size());
  for (const auto& a : attributes) out.push_back(a.z);
  return out;
}

std::vector<double> ImportanceReport::raw_scores() const {
  std::vector<double> out;
  out.reserve(attributes.size());
  for (const auto& a : attributes) out.push_back(a.raw);
  return out;
}

namespace {

using TreeDecreases = std::vector<std::pair<std::uint32_t, double>>;

// Accuracy decreases of one tree, one entry per attribute it splits on.
TreeDecreases tree_decreases(const Tree& tree, const Dataset& data, std::span<const double> weights, Rng rng) {
  TreeDecreases out;
  const auto oob = tree.out_of_bag();
  if (oob.empty()) return out;
  const auto& nodes = tree.nodes();
  const auto decision = data.decision();
  const auto used = tree.used_attributes();

  // Only objects whose path crosses a split on attribute a can change
  // prediction when a is permuted; index them per attribute.
  std::vector<std::vector<std::uint32_t>> crossing(data.n_attributes());
  std::vector<std::uint32_t> last_seen(data.n_attributes(), std::numeric_limits<std::uint32_t>::max());
  std::vector<char> correct(oob.size());
  for (std::uint32_t k = 0; k < oob.size(); ++k) {
    const std::uint32_t object = oob[k];
    std::uint32_t at = 0;
    while (!nodes[at].is_leaf()) {
      const TreeNode& node = nodes[at];
      const auto a = static_cast<std::size_t>(node.attribute);
      if (last_seen[a] != k) {
        last_seen[a] = k;
        crossing[a].push_back(k);
      }
      at = data.column(a)[object] <= node.threshold ? node.left : node.right;
    }
    correct[k] = nodes[at].label == decision[object];
  }

  std::vector<std::uint32_t> permutation(oob.size());
  double oob_weight = static_cast<double>(oob.size());
  if (!weights.empty()) {
    oob_weight = 0.0;
    for (std::uint32_t object : oob) oob_weight += weights[object];
    if (!(oob_weight > 0.0)) return out;
  }
  out.reserve(used.size());
  for (std::size_t a : used) {
    std::iota(permutation.begin(), permutation.end(), 0u);
    rng.shuffle(std::span<std::uint32_t>(permutation));
    const auto column = data.column(a);
    double lost = 0.0;
    for (std::uint32_t k : crossing[a]) {
      const std::uint32_t object = oob[k];
      const double swapped = column[oob[permutation[k]]];
      const ClassId label = tree.classify([&](std::size_t b) { return b == a ? swapped : data.column(b)[object]; });
      const int change = static_cast<int>(correct[k]) - static_cast<int>(label == decision[object]);
      if (change != 0) lost += weights.empty() ? change : change * weights[object];
    }
    out.emplace_back(static_cast<std::uint32_t>(a), lost / oob_weight);
  }
  return out;
}

}  // namespace

ImportanceReport permutation_importance(const Forest& forest, const Dataset& data, std::uint64_t seed,
                                        std::span<const double> object_weights) {
  forest.check_compatible(data);
  if (!object_weights.empty() && object_weights.size() != data.n_objects()) {
    throw InputError("object weight count does not match objects");
  }
  const auto& trees = forest.trees();
  std::vector<TreeDecreases> per_tree(trees.size());
  parallel_for(trees.size(), forest.config().jobs,
               [&](std::size_t t) { per_tree[t] = tree_decreases(trees[t], data, object_weights, Rng(derive_seed(seed, t))); });

  // Welford accumulation in tree order keeps the result schedule-independent.
  struct Moments {
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;
  };
  std::vector<Moments> moments(data.n_attributes());
  for (const auto& decreases : per_tree) {
    for (const auto& [a, d] : decreases) {
      Moments& m = moments[a];
      ++m.n;
      const double delta = d - m.mean;
      m.mean += delta / static_cast<double>(m.n);
      m.m2 += delta * (d - m.mean);
    }
  }

  ImportanceReport report;
  report.attributes.resize(data.n_attributes());
  for (std::size_t a = 0; a < moments.size(); ++a) {
    const Moments& m = moments[a];
    AttributeImportance& out = report.attributes[a];
    out.using_trees = m.n;
    if (m.n == 0) continue;
    out.raw = m.mean;
    if (m.n < 2) continue;
    // Variance over all trees, folding in the zero decreases of trees that
    // do not use the attribute.
    const auto k = static_cast<double>(m.n);
    const auto trees_total = static_cast<double>(trees.size());
    const double variance = (m.m2 + k * m.mean * m.mean * (1.0 - k / trees_total)) / (trees_total - 1.0);
    if (!(variance > 0.0)) continue;
    out.z = (k * m.mean / trees_total) / std::sqrt(variance / trees_total);
    out.z_defined = true;
  }
  return report;
}

}  // namespace allrel
