#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace lexatom {

/// Positive class is complex (label 1).
struct Confusion {
  std::size_t tp = 0;
  std::size_t tn = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  std::size_t total() const noexcept { return tp + tn + fp + fn; }
};

struct KappaResult {
  double kappa = 0.0;
  double z = 0.0;
  double p = 1.0;  // two-tailed normal
};

struct Metrics {
  double accuracy = 0.0;
  double sensitivity = 0.0;  // complex recall; NaN without complex truths
  double specificity = 0.0;  // simple recall; NaN without simple truths
  double baseline = 0.0;     // majority-class proportion
  double kappa = 0.0;
  double z = 0.0;
  double p = 1.0;
  Confusion confusion;

  /// {accuracy, sensitivity, specificity, baseline, kappa, z, p, confusion}
  std::string to_json() const;
};

Confusion confusion_counts(std::span<const int> truth, std::span<const int> predicted);

/// Accuracy, sensitivity, specificity, baseline and the confusion counts;
/// kappa fields are left at their defaults.
Metrics confusion_metrics(std::span<const int> truth, std::span<const int> predicted);

/// Cohen's kappa with the Fleiss large-sample null standard error for z.
/// Throws `ErrorKind::degenerate` when chance agreement is 1.
KappaResult cohens_kappa(std::span<const int> truth, std::span<const int> predicted);
KappaResult cohens_kappa(const Confusion& c);

/// confusion_metrics plus cohens_kappa.
Metrics evaluate(std::span<const int> truth, std::span<const int> predicted);

}  // namespace lexatom
