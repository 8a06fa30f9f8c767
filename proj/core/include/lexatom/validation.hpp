#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lexatom/features.hpp"
#include "lexatom/forest.hpp"
#include "lexatom/metrics.hpp"
#include "lexatom/smote.hpp"

namespace lexatom {

inline constexpr double kDefaultCutpoint = 0.5;

/// 1 (complex) iff score >= cutpoint.
int classify(double score, double cutpoint = kDefaultCutpoint);

struct ScoredWord {
  std::string word;
  double score = 0.0;
  std::optional<int> label;
  int predicted = 0;
};

struct ScoredLexicon {
  std::vector<ScoredWord> entries;
  double cutpoint = kDefaultCutpoint;

  void add(std::string word, double score, std::optional<int> label = std::nullopt);
  std::size_t size() const noexcept { return entries.size(); }
  std::vector<double> scores() const;
  /// Metrics over the entries that carry a label.
  Metrics metrics() const;

  /// word,score[,label],predicted; the label column appears only when some
  /// entry has one. Scores are written at full precision.
  void write_csv(std::ostream& os) const;
  static ScoredLexicon read_csv(std::istream& in, double cutpoint = kDefaultCutpoint);
  static ScoredLexicon read_csv(const std::filesystem::path& path,
                                double cutpoint = kDefaultCutpoint);
};

/// Fold index for every row. Each class is shuffled (seeded) and dealt
/// round-robin, so per-class fold sizes differ by at most one. Throws
/// `ErrorKind::class_smaller_than_folds` when a class has fewer rows than
/// folds.
std::vector<std::size_t> stratified_folds(std::span<const int> labels, std::size_t folds,
                                          std::uint64_t seed);

struct CrossValidationOptions {
  std::size_t folds = 10;
  SmoteParams smote;  // smote.seed is ignored; fold streams derive from the forest seed
  double cutpoint = kDefaultCutpoint;
};

/// Out-of-fold scores: for each fold the training part is SMOTE-balanced, a
/// forest is trained on it and the held-out rows are scored. Entries follow
/// the matrix row order and carry the true labels.
ScoredLexicon cross_val_scores(const FeatureMatrix& matrix, std::span<const int> labels,
                               const ForestParams& params,
                               const CrossValidationOptions& options = {});

/// Seed for an independent random stream derived from a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

}  // namespace lexatom
