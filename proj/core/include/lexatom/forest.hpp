#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexatom/corpus.hpp"
#include "lexatom/features.hpp"

namespace lexatom {

struct ForestParams {
  std::size_t n_trees = 100;
  std::optional<std::size_t> max_depth;  // unlimited when absent
  std::size_t min_samples_split = 5;
  // Candidate variables examined per split; floor(sqrt(d)) when absent.
  std::optional<std::size_t> features_per_split;
  std::uint64_t seed = 0;
  // Worker threads for training and batch prediction; 0 = hardware
  // concurrency. Results do not depend on it, so it is not serialized.
  unsigned threads = 0;

  void validate() const;
  std::size_t candidates_for(std::size_t n_features) const;
};

struct TreeNode {
  static constexpr std::int32_t kLeaf = -1;

  std::int32_t feature = kLeaf;  // index into the model's variables
  double threshold = 0.0;        // rows with value <= threshold go left
  std::int32_t left = -1;
  std::int32_t right = -1;
  std::array<double, 2> leaf{0.5, 0.5};  // class frequencies {simple, complex}

  bool is_leaf() const noexcept { return feature == kLeaf; }
};

/// Nodes are stored in pre-order; node 0 is the root.
class DecisionTree {
 public:
  DecisionTree() = default;
  explicit DecisionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

  /// Class-1 probability of the leaf that `row` falls into.
  double predict(std::span<const FeatureValue> row) const;

  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  std::size_t depth() const;

 private:
  std::vector<TreeNode> nodes_;
};

class ForestModel {
 public:
  static constexpr int kFormatVersion = 1;

  ForestModel() = default;
  ForestModel(std::vector<DecisionTree> trees, std::vector<VariableId> variables,
              std::size_t max_length, ForestParams params);

  /// Mean over trees of the class-1 leaf probability.
  double predict_score(std::span<const FeatureValue> row) const;
  std::vector<double> predict_scores(const FeatureMatrix& matrix) const;

  /// Featurizes `word` in the model's input layout; throws
  /// `ErrorKind::length_exceeds_max` when the word is longer than max_length.
  FeatureVector encode(const Word& word) const;
  double score_word(const Word& word) const { return predict_score(encode(word)); }

  const std::vector<DecisionTree>& trees() const noexcept { return trees_; }
  const std::vector<VariableId>& variables() const noexcept { return variables_; }
  std::size_t max_length() const noexcept { return max_length_; }
  const ForestParams& params() const noexcept { return params_; }

  /// Versioned JSON: {version, Lmax, variables, params, trees}.
  std::string to_json() const;
  static ForestModel from_json(std::string_view text);

 private:
  std::vector<DecisionTree> trees_;
  std::vector<VariableId> variables_;
  std::size_t max_length_ = 0;
  ForestParams params_;
};

/// Grows `params.n_trees` Gini trees on bootstrap samples. The variables of
/// `matrix` become the model's input layout.
ForestModel train_random_forest(const FeatureMatrix& matrix, std::span<const int> labels,
                                const ForestParams& params);

}  // namespace lexatom
