#include "lexatom/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "lexatom/error.hpp"
#include "lexatom/stats.hpp"

namespace lexatom {

namespace {

double ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

Confusion confusion_counts(std::span<const int> truth, std::span<const int> predicted) {
  if (truth.size() != predicted.size()) {
    throw Error(ErrorKind::length_mismatch,
                "truth has " + std::to_string(truth.size()) + " labels, predictions " +
                    std::to_string(predicted.size()));
  }
  Confusion c;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool t = truth[i] == 1;
    const bool p = predicted[i] == 1;
    if (t && p) ++c.tp;
    else if (!t && !p) ++c.tn;
    else if (p) ++c.fp;
    else ++c.fn;
  }
  return c;
}

Metrics confusion_metrics(std::span<const int> truth, std::span<const int> predicted) {
  const Confusion c = confusion_counts(truth, predicted);
  if (c.total() == 0) throw Error(ErrorKind::sample_too_small, "no labels to evaluate");
  Metrics m;
  m.confusion = c;
  m.accuracy = ratio(c.tp + c.tn, c.total());
  m.sensitivity = ratio(c.tp, c.tp + c.fn);
  m.specificity = ratio(c.tn, c.tn + c.fp);
  m.baseline = ratio(std::max(c.tp + c.fn, c.tn + c.fp), c.total());
  return m;
}

KappaResult cohens_kappa(const Confusion& c) {
  const auto n = static_cast<double>(c.total());
  if (c.total() < 2) throw Error(ErrorKind::sample_too_small, "kappa needs at least 2 ratings");
  const double observed = static_cast<double>(c.tp + c.tn) / n;
  // Marginal proportions: truth rows, prediction columns.
  const double truth1 = static_cast<double>(c.tp + c.fn) / n;
  const double truth0 = static_cast<double>(c.tn + c.fp) / n;
  const double pred1 = static_cast<double>(c.tp + c.fp) / n;
  const double pred0 = static_cast<double>(c.tn + c.fn) / n;
  const double chance = truth1 * pred1 + truth0 * pred0;
  if (chance >= 1.0) {
    throw Error(ErrorKind::degenerate, "kappa undefined: chance agreement is 1");
  }

  KappaResult r;
  r.kappa = (observed - chance) / (1.0 - chance);
  const double cross = truth1 * pred1 * (truth1 + pred1) + truth0 * pred0 * (truth0 + pred0);
  const double radicand = std::max(0.0, chance + chance * chance - cross);
  const double se0 = std::sqrt(radicand) / ((1.0 - chance) * std::sqrt(n));
  if (se0 == 0.0) {
    if (r.kappa == 0.0) {
      r.z = 0.0;
      r.p = 1.0;
    } else {
      r.z = std::copysign(std::numeric_limits<double>::infinity(), r.kappa);
      r.p = 0.0;
    }
    return r;
  }
  r.z = r.kappa / se0;
  r.p = normal_two_tailed(r.z);
  return r;
}

KappaResult cohens_kappa(std::span<const int> truth, std::span<const int> predicted) {
  return cohens_kappa(confusion_counts(truth, predicted));
}

Metrics evaluate(std::span<const int> truth, std::span<const int> predicted) {
  Metrics m = confusion_metrics(truth, predicted);
  const KappaResult k = cohens_kappa(m.confusion);
  m.kappa = k.kappa;
  m.z = k.z;
  m.p = k.p;
  return m;
}

std::string Metrics::to_json() const {
  const nlohmann::ordered_json doc = {
      {"accuracy", accuracy},
      {"sensitivity", sensitivity},
      {"specificity", specificity},
      {"baseline", baseline},
      {"kappa", kappa},
      {"z", z},
      {"p", p},
      {"confusion", {{"tp", confusion.tp}, {"tn", confusion.tn}, {"fp", confusion.fp},
                     {"fn", confusion.fn}}},
  };
  return doc.dump(2) + "\n";
}

}  // namespace lexatom
