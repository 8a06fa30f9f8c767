#include "lexatom/smote.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "lexatom/error.hpp"

namespace lexatom {

namespace {

// Minority rows are overwhelmingly zero, so distances are computed on the
// nonzero entries: |a - b|^2 = |a|^2 + |b|^2 - 2 a.b.
struct SparseRow {
  std::vector<std::pair<std::uint32_t, double>> entries;
  double squared_norm = 0.0;
};

SparseRow make_sparse(std::span<const FeatureValue> row) {
  SparseRow out;
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (row[c] != 0.0f) {
      out.entries.emplace_back(static_cast<std::uint32_t>(c), row[c]);
      out.squared_norm += static_cast<double>(row[c]) * row[c];
    }
  }
  return out;
}

double dot(const SparseRow& a, const SparseRow& b) {
  double sum = 0.0;
  auto i = a.entries.begin();
  auto j = b.entries.begin();
  while (i != a.entries.end() && j != b.entries.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      sum += i->second * j->second;
      ++i;
      ++j;
    }
  }
  return sum;
}

class NeighbourIndex {
 public:
  NeighbourIndex(const FeatureMatrix& rows, std::size_t k) : k_(std::min(k, rows.rows() - 1)) {
    sparse_.reserve(rows.rows());
    for (std::size_t r = 0; r < rows.rows(); ++r) sparse_.push_back(make_sparse(rows.row(r)));
  }

  std::size_t k() const noexcept { return k_; }

  // The k nearest other rows, nearest first; equal distances favour the lower
  // row index.
  const std::vector<std::size_t>& neighbours(std::size_t i) {
    auto it = cache_.find(i);
    if (it != cache_.end()) return it->second;
    std::vector<std::pair<double, std::size_t>> dist;
    dist.reserve(sparse_.size() - 1);
    for (std::size_t j = 0; j < sparse_.size(); ++j) {
      if (j == i) continue;
      const double d2 = sparse_[i].squared_norm + sparse_[j].squared_norm -
                        2.0 * dot(sparse_[i], sparse_[j]);
      dist.emplace_back(std::max(0.0, d2), j);
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k_), dist.end());
    std::vector<std::size_t> nn;
    nn.reserve(k_);
    for (std::size_t n = 0; n < k_; ++n) nn.push_back(dist[n].second);
    return cache_.emplace(i, std::move(nn)).first->second;
  }

 private:
  std::size_t k_;
  std::vector<SparseRow> sparse_;
  std::map<std::size_t, std::vector<std::size_t>> cache_;
};

}  // namespace

SmoteResult smote_oversample(const FeatureMatrix& minority, std::size_t target_count,
                             const SmoteParams& params) {
  if (minority.rows() < 2) {
    throw Error(ErrorKind::minority_too_small,
                "SMOTE needs at least 2 minority rows, got " + std::to_string(minority.rows()));
  }
  if (params.k < 1) throw Error(ErrorKind::invalid_argument, "SMOTE k must be >= 1");

  SmoteResult out{FeatureMatrix(minority.variables(), minority.max_length()), {}};
  if (target_count <= minority.rows()) return out;
  const std::size_t needed = target_count - minority.rows();

  NeighbourIndex index(minority, params.k);
  std::mt19937_64 rng(params.seed);
  std::uniform_int_distribution<std::size_t> pick_row(0, minority.rows() - 1);
  std::uniform_int_distribution<std::size_t> pick_nn(0, index.k() - 1);
  std::uniform_real_distribution<double> gap_dist(0.0, 1.0);

  FeatureVector synthetic(minority.cols());
  out.parents.reserve(needed);
  for (std::size_t s = 0; s < needed; ++s) {
    const std::size_t base = pick_row(rng);
    const std::size_t nn = index.neighbours(base)[pick_nn(rng)];
    const double gap = gap_dist(rng);
    const auto x = minority.row(base);
    const auto y = minority.row(nn);
    for (std::size_t c = 0; c < synthetic.size(); ++c) {
      const double v = x[c] + gap * (static_cast<double>(y[c]) - x[c]);
      const auto lo = std::min(x[c], y[c]);
      const auto hi = std::max(x[c], y[c]);
      auto value = std::clamp(static_cast<FeatureValue>(v), lo, hi);
      if (params.round) value = value >= 0.5f ? hi : lo;
      synthetic[c] = value;
    }
    out.rows.push_row(synthetic, {});
    out.parents.emplace_back(base, nn);
  }
  return out;
}

BalancedData smote_balance(const FeatureMatrix& matrix, std::span<const int> labels,
                           const SmoteParams& params) {
  if (labels.size() != matrix.rows()) {
    throw Error(ErrorKind::length_mismatch, "labels and matrix rows differ in count");
  }
  std::vector<std::size_t> by_class[2];
  for (std::size_t r = 0; r < labels.size(); ++r) by_class[labels[r] == 1 ? 1 : 0].push_back(r);
  BalancedData out{matrix, {labels.begin(), labels.end()}};
  if (by_class[0].size() == by_class[1].size()) return out;

  const int minority_label = by_class[0].size() < by_class[1].size() ? 0 : 1;
  const auto& minority_rows = by_class[minority_label];
  const auto target = by_class[1 - minority_label].size();
  const auto synthetic = smote_oversample(matrix.select_rows(minority_rows), target, params);
  for (std::size_t r = 0; r < synthetic.rows.rows(); ++r) {
    out.matrix.push_row(synthetic.rows.row(r), {});
    out.labels.push_back(minority_label);
  }
  return out;
}

}  // namespace lexatom
