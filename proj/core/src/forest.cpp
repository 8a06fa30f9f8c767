#include "lexatom/forest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include <json.hpp>

#include "lexatom/error.hpp"

namespace lexatom {

namespace {

using json = nlohmann::json;

// Training rows stored column-major so split search scans contiguous memory.
struct TrainingData {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<FeatureValue> columns;
  std::vector<bool> binary;  // column holds only 0 and 1
  std::vector<int> labels;

  FeatureValue value(std::size_t feature, std::uint32_t row) const {
    return columns[feature * n + row];
  }
};

TrainingData make_training_data(const FeatureMatrix& matrix, std::span<const int> labels) {
  TrainingData data;
  data.n = matrix.rows();
  data.d = matrix.cols();
  data.columns.resize(data.n * data.d);
  data.binary.assign(data.d, true);
  for (std::size_t r = 0; r < data.n; ++r) {
    const auto row = matrix.row(r);
    for (std::size_t c = 0; c < data.d; ++c) {
      data.columns[c * data.n + r] = row[c];
      if (row[c] != 0.0f && row[c] != 1.0f) data.binary[c] = false;
    }
  }
  data.labels.assign(labels.begin(), labels.end());
  return data;
}

struct Split {
  std::size_t feature = 0;
  double threshold = 0.0;
  double proxy = -1.0;  // sum over children of (c0^2 + c1^2) / n; larger is purer
  bool found = false;
};

double children_proxy(double left_n, double left_c1, double right_n, double right_c1) {
  const double left_c0 = left_n - left_c1;
  const double right_c0 = right_n - right_c1;
  return (left_c0 * left_c0 + left_c1 * left_c1) / left_n +
         (right_c0 * right_c0 + right_c1 * right_c1) / right_n;
}

void consider(Split& best, std::size_t feature, double threshold, double proxy) {
  if (!best.found || proxy > best.proxy ||
      (proxy == best.proxy && feature < best.feature)) {
    best = {feature, threshold, proxy, true};
  }
}

class TreeBuilder {
 public:
  TreeBuilder(const TrainingData& data, const ForestParams& params, std::size_t tree_index)
      : data_(data),
        params_(params),
        candidates_(params.candidates_for(data.d)),
        rng_(make_rng(params.seed, tree_index)) {}

  DecisionTree build() {
    weights_.assign(data_.n, 0);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(data_.n - 1));
    for (std::size_t i = 0; i < data_.n; ++i) ++weights_[pick(rng_)];
    for (std::uint32_t i = 0; i < data_.n; ++i) {
      if (weights_[i] > 0) samples_.push_back(i);
    }
    features_.resize(data_.d);
    for (std::size_t f = 0; f < data_.d; ++f) features_[f] = f;

    struct Task {
      std::size_t begin, end, depth;
      std::int32_t parent;
      bool is_left;
    };
    std::vector<Task> stack{{0, samples_.size(), 0, -1, false}};
    while (!stack.empty()) {
      const Task task = stack.back();
      stack.pop_back();
      const auto id = static_cast<std::int32_t>(nodes_.size());
      nodes_.emplace_back();
      if (task.parent >= 0) {
        auto& parent = nodes_[static_cast<std::size_t>(task.parent)];
        (task.is_left ? parent.left : parent.right) = id;
      }

      double total = 0.0;
      double ones = 0.0;
      for (std::size_t i = task.begin; i < task.end; ++i) {
        const auto s = samples_[i];
        total += weights_[s];
        if (data_.labels[s] == 1) ones += weights_[s];
      }
      nodes_.back().leaf = {(total - ones) / total, ones / total};

      const bool depth_limited = params_.max_depth && task.depth >= *params_.max_depth;
      if (total < static_cast<double>(params_.min_samples_split) || ones == 0.0 ||
          ones == total || depth_limited) {
        continue;
      }
      const Split split = find_split(task.begin, task.end, total, ones);
      if (!split.found) continue;

      const auto mid = static_cast<std::size_t>(
          std::partition(samples_.begin() + static_cast<std::ptrdiff_t>(task.begin),
                         samples_.begin() + static_cast<std::ptrdiff_t>(task.end),
                         [&](std::uint32_t s) {
                           return data_.value(split.feature, s) <= split.threshold;
                         }) -
          samples_.begin());
      auto& node = nodes_.back();
      node.feature = static_cast<std::int32_t>(split.feature);
      node.threshold = split.threshold;
      // Right pushed first so the left subtree is laid out first (pre-order).
      stack.push_back({mid, task.end, task.depth + 1, id, false});
      stack.push_back({task.begin, mid, task.depth + 1, id, true});
    }
    return DecisionTree(std::move(nodes_));
  }

 private:
  static std::mt19937_64 make_rng(std::uint64_t seed, std::size_t tree_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(tree_index), 0x7265u};
    return std::mt19937_64(seq);
  }

  // Examines features in a fresh random order until `candidates_` features
  // that are not constant within the node have been evaluated.
  Split find_split(std::size_t begin, std::size_t end, double total, double ones) {
    Split best;
    std::size_t evaluated = 0;
    for (std::size_t i = 0; i < features_.size() && evaluated < candidates_; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, features_.size() - 1);
      std::swap(features_[i], features_[pick(rng_)]);
      const std::size_t f = features_[i];
      const bool varied = data_.binary[f] ? split_binary(best, f, begin, end, total, ones)
                                          : split_numeric(best, f, begin, end, total, ones);
      if (varied) ++evaluated;
    }
    return best;
  }

  bool split_binary(Split& best, std::size_t f, std::size_t begin, std::size_t end,
                    double total, double ones) const {
    double right_n = 0.0;
    double right_c1 = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      const auto s = samples_[i];
      if (data_.value(f, s) != 0.0f) {
        right_n += weights_[s];
        if (data_.labels[s] == 1) right_c1 += weights_[s];
      }
    }
    if (right_n == 0.0 || right_n == total) return false;
    consider(best, f, 0.5, children_proxy(total - right_n, ones - right_c1, right_n, right_c1));
    return true;
  }

  bool split_numeric(Split& best, std::size_t f, std::size_t begin, std::size_t end,
                     double total, double ones) {
    scratch_.clear();
    for (std::size_t i = begin; i < end; ++i) {
      const auto s = samples_[i];
      scratch_.push_back({data_.value(f, s), s});
    }
    std::sort(scratch_.begin(), scratch_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (scratch_.front().first == scratch_.back().first) return false;

    double left_n = 0.0;
    double left_c1 = 0.0;
    for (std::size_t i = 0; i + 1 < scratch_.size(); ++i) {
      const auto s = scratch_[i].second;
      left_n += weights_[s];
      if (data_.labels[s] == 1) left_c1 += weights_[s];
      const FeatureValue here = scratch_[i].first;
      const FeatureValue next = scratch_[i + 1].first;
      if (here == next) continue;
      const double threshold = (static_cast<double>(here) + static_cast<double>(next)) / 2.0;
      consider(best, f, threshold,
               children_proxy(left_n, left_c1, total - left_n, ones - left_c1));
    }
    return true;
  }

  const TrainingData& data_;
  const ForestParams& params_;
  std::size_t candidates_;
  std::mt19937_64 rng_;
  std::vector<std::uint32_t> weights_;
  std::vector<std::uint32_t> samples_;
  std::vector<std::size_t> features_;
  std::vector<std::pair<FeatureValue, std::uint32_t>> scratch_;
  std::vector<TreeNode> nodes_;
};

unsigned worker_count(unsigned requested, std::size_t jobs) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

// Runs job(i) for i in [0, jobs) on `threads` workers. Each job writes only
// to its own output slot, so results do not depend on scheduling.
template <typename Job>
void parallel_for(std::size_t jobs, unsigned threads, Job job) {
  const unsigned workers = worker_count(threads, jobs);
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < jobs && !failed; i = next++) {
        try {
          job(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

json node_to_json(const std::vector<TreeNode>& nodes, std::size_t i) {
  const auto& node = nodes[i];
  if (node.is_leaf()) return json{{"leaf", {node.leaf[0], node.leaf[1]}}};
  return json{{"var", node.feature},
              {"threshold", node.threshold},
              {"left", node_to_json(nodes, static_cast<std::size_t>(node.left))},
              {"right", node_to_json(nodes, static_cast<std::size_t>(node.right))}};
}

std::int32_t node_from_json(const json& j, std::vector<TreeNode>& out, std::size_t n_vars) {
  const auto id = static_cast<std::int32_t>(out.size());
  out.emplace_back();
  if (j.contains("leaf")) {
    const auto& leaf = j.at("leaf");
    out[static_cast<std::size_t>(id)].leaf = {leaf.at(0).get<double>(), leaf.at(1).get<double>()};
    return id;
  }
  const auto var = j.at("var").get<std::int32_t>();
  if (var < 0 || static_cast<std::size_t>(var) >= n_vars) {
    throw Error(ErrorKind::parse, "tree split variable " + std::to_string(var) + " out of range");
  }
  out[static_cast<std::size_t>(id)].feature = var;
  out[static_cast<std::size_t>(id)].threshold = j.at("threshold").get<double>();
  const auto left = node_from_json(j.at("left"), out, n_vars);
  const auto right = node_from_json(j.at("right"), out, n_vars);
  out[static_cast<std::size_t>(id)].left = left;
  out[static_cast<std::size_t>(id)].right = right;
  return id;
}

template <typename T>
json optional_to_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

}  // namespace

void ForestParams::validate() const {
  if (n_trees < 1) throw Error(ErrorKind::invalid_argument, "n_trees must be >= 1");
  if (min_samples_split < 2) {
    throw Error(ErrorKind::invalid_argument, "min_samples_split must be >= 2");
  }
  if (max_depth && *max_depth < 1) throw Error(ErrorKind::invalid_argument, "max_depth must be >= 1");
  if (features_per_split && *features_per_split < 1) {
    throw Error(ErrorKind::invalid_argument, "features_per_split must be >= 1");
  }
}

std::size_t ForestParams::candidates_for(std::size_t n_features) const {
  if (features_per_split) return std::min(*features_per_split, n_features);
  const auto root = static_cast<std::size_t>(std::sqrt(static_cast<double>(n_features)));
  return std::max<std::size_t>(1, root);
}

double DecisionTree::predict(std::span<const FeatureValue> row) const {
  std::size_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const auto& node = nodes_[i];
    i = static_cast<std::size_t>(row[static_cast<std::size_t>(node.feature)] <= node.threshold
                                     ? node.left
                                     : node.right);
  }
  return nodes_[i].leaf[1];
}

std::size_t DecisionTree::depth() const {
  if (nodes_.empty()) return 0;
  std::size_t deepest = 0;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    const auto [i, d] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, d);
    if (!nodes_[i].is_leaf()) {
      stack.push_back({static_cast<std::size_t>(nodes_[i].left), d + 1});
      stack.push_back({static_cast<std::size_t>(nodes_[i].right), d + 1});
    }
  }
  return deepest;
}

ForestModel::ForestModel(std::vector<DecisionTree> trees, std::vector<VariableId> variables,
                         std::size_t max_length, ForestParams params)
    : trees_(std::move(trees)),
      variables_(std::move(variables)),
      max_length_(max_length),
      params_(params) {}

double ForestModel::predict_score(std::span<const FeatureValue> row) const {
  if (row.size() != variables_.size()) {
    throw Error(ErrorKind::dimension_mismatch,
                "vector has " + std::to_string(row.size()) + " values, model expects " +
                    std::to_string(variables_.size()));
  }
  if (trees_.empty()) throw Error(ErrorKind::invalid_argument, "model has no trees");
  double sum = 0.0;
  for (const auto& tree : trees_) sum += tree.predict(row);
  return sum / static_cast<double>(trees_.size());
}

std::vector<double> ForestModel::predict_scores(const FeatureMatrix& matrix) const {
  std::vector<double> scores(matrix.rows());
  parallel_for(matrix.rows(), params_.threads,
               [&](std::size_t r) { scores[r] = predict_score(matrix.row(r)); });
  return scores;
}

FeatureVector ForestModel::encode(const Word& word) const {
  const auto full = featurize_word(word, max_length_);
  FeatureVector out;
  out.reserve(variables_.size());
  for (const auto& v : variables_) out.push_back(full[v.column()]);
  return out;
}

std::string ForestModel::to_json() const {
  json vars = json::array();
  for (const auto& v : variables_) vars.push_back(v.name());
  json params = {{"n_trees", params_.n_trees},
                 {"max_depth", optional_to_json(params_.max_depth)},
                 {"min_samples_split", params_.min_samples_split},
                 {"features_per_split", optional_to_json(params_.features_per_split)},
                 {"seed", params_.seed}};
  json trees = json::array();
  for (const auto& t : trees_) trees.push_back(node_to_json(t.nodes(), 0));
  json doc = {{"version", kFormatVersion},
              {"Lmax", max_length_},
              {"variables", std::move(vars)},
              {"params", std::move(params)},
              {"trees", std::move(trees)}};
  return doc.dump() + "\n";
}

ForestModel ForestModel::from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, std::string("model is not valid JSON: ") + e.what());
  }
  try {
    if (doc.at("version").get<int>() != kFormatVersion) {
      throw Error(ErrorKind::parse, "unsupported model version " + doc.at("version").dump());
    }
    std::vector<VariableId> vars;
    for (const auto& v : doc.at("variables")) vars.push_back(VariableId::parse(v.get<std::string>()));
    const auto max_length = doc.at("Lmax").get<std::size_t>();
    for (const auto& v : vars) {
      if (v.position > max_length) {
        throw Error(ErrorKind::parse, "variable " + v.name() + " is beyond Lmax");
      }
    }
    const auto& p = doc.at("params");
    ForestParams params;
    params.n_trees = p.at("n_trees").get<std::size_t>();
    params.max_depth = optional_from_json<std::size_t>(p.at("max_depth"));
    params.min_samples_split = p.at("min_samples_split").get<std::size_t>();
    params.features_per_split = optional_from_json<std::size_t>(p.at("features_per_split"));
    params.seed = p.at("seed").get<std::uint64_t>();

    std::vector<DecisionTree> trees;
    for (const auto& t : doc.at("trees")) {
      std::vector<TreeNode> nodes;
      node_from_json(t, nodes, vars.size());
      trees.emplace_back(std::move(nodes));
    }
    return ForestModel(std::move(trees), std::move(vars), max_length, params);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, std::string("malformed model: ") + e.what());
  }
}

ForestModel train_random_forest(const FeatureMatrix& matrix, std::span<const int> labels,
                                const ForestParams& params) {
  params.validate();
  if (labels.size() != matrix.rows()) {
    throw Error(ErrorKind::length_mismatch, "labels and matrix rows differ in count");
  }
  if (matrix.rows() < 2) throw Error(ErrorKind::sample_too_small, "need at least 2 rows");
  if (matrix.cols() == 0) throw Error(ErrorKind::invalid_argument, "matrix has no columns");
  const auto positives = std::count(labels.begin(), labels.end(), 1);
  if (positives == 0 || static_cast<std::size_t>(positives) == labels.size()) {
    throw Error(ErrorKind::single_class, "training labels contain a single class");
  }

  const TrainingData data = make_training_data(matrix, labels);
  std::vector<DecisionTree> trees(params.n_trees);
  parallel_for(params.n_trees, params.threads, [&](std::size_t t) {
    trees[t] = TreeBuilder(data, params, t).build();
  });
  return ForestModel(std::move(trees), matrix.variables(), matrix.max_length(), params);
}

}  // namespace lexatom
