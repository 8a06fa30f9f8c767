#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lexatom/features.hpp"

namespace lexatom {

struct SmoteParams {
  std::size_t k = 5;  // nearest minority neighbours to interpolate towards
  std::uint64_t seed = 0;
  // Round synthetic entries back to 0/1 instead of keeping the interpolated
  // fractions.
  bool round = false;
};

struct SmoteResult {
  FeatureMatrix rows;  // synthetic rows only
  // (sample, neighbour) minority row indices each synthetic row was drawn
  // between.
  std::vector<std::pair<std::size_t, std::size_t>> parents;
};

/// Generates `target_count - minority.rows()` synthetic rows, each a random
/// point on the segment from a random minority row to one of its k nearest
/// (Euclidean) minority neighbours. Throws `ErrorKind::minority_too_small`
/// for fewer than 2 minority rows.
SmoteResult smote_oversample(const FeatureMatrix& minority, std::size_t target_count,
                             const SmoteParams& params);

struct BalancedData {
  FeatureMatrix matrix;
  std::vector<int> labels;
};

/// Appends synthetic rows of the smaller class until both classes are the
/// same size.
BalancedData smote_balance(const FeatureMatrix& matrix, std::span<const int> labels,
                           const SmoteParams& params);

}  // namespace lexatom
