#include <doctest.h>

#include <cmath>
#include <vector>

#include "lexatom/error.hpp"
#include "lexatom/metrics.hpp"

using namespace lexatom;

TEST_CASE("confusion metrics") {
  const std::vector<int> truth{1, 1, 1, 0, 0, 0, 0, 0};
  const std::vector<int> pred{1, 1, 0, 0, 0, 0, 1, 0};
  const auto m = confusion_metrics(truth, pred);
  CHECK(m.confusion.tp == 2);
  CHECK(m.confusion.fn == 1);
  CHECK(m.confusion.tn == 4);
  CHECK(m.confusion.fp == 1);
  CHECK(m.accuracy == doctest::Approx(6.0 / 8.0));
  CHECK(m.sensitivity == doctest::Approx(2.0 / 3.0));
  CHECK(m.specificity == doctest::Approx(4.0 / 5.0));
  CHECK(m.baseline == doctest::Approx(5.0 / 8.0));

  const std::vector<int> all_simple{0, 0};
  CHECK(std::isnan(confusion_metrics(all_simple, all_simple).sensitivity));

  const std::vector<int> short_pred{1};
  try {
    confusion_metrics(truth, short_pred);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::length_mismatch);
  }
}

TEST_CASE("cohen's kappa") {
  const auto k = cohens_kappa(Confusion{40, 40, 10, 10});
  CHECK(std::fabs(k.kappa - 0.6) <= 1e-12);
  // Fleiss null SE: sqrt(p_e / (n (1 - p_e))) with p_e = 0.5, n = 100.
  CHECK(k.z == doctest::Approx(0.6 / std::sqrt(0.5 / 50.0)).epsilon(1e-12));
  CHECK(k.p < 1e-8);

  const auto perfect = cohens_kappa(Confusion{5, 5, 0, 0});
  CHECK(perfect.kappa == 1.0);

  const auto chance = cohens_kappa(Confusion{25, 25, 25, 25});
  CHECK(chance.kappa == doctest::Approx(0.0));
  CHECK(chance.p == doctest::Approx(1.0));

  const auto inverse = cohens_kappa(Confusion{0, 0, 5, 5});
  CHECK(inverse.kappa == -1.0);

  try {
    cohens_kappa(Confusion{10, 0, 0, 0});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::degenerate);
  }
}

TEST_CASE("evaluate fills every field and serializes") {
  const std::vector<int> truth{1, 0, 1, 0};
  const std::vector<int> pred{1, 0, 0, 0};
  const auto m = evaluate(truth, pred);
  CHECK(m.accuracy == 0.75);
  CHECK(m.kappa == doctest::Approx(0.5));
  const auto json = m.to_json();
  CHECK(json.find("\"accuracy\": 0.75") != std::string::npos);
  CHECK(json.find("\"confusion\"") != std::string::npos);

  Metrics nan_metrics;
  nan_metrics.sensitivity = NAN;
  CHECK(nan_metrics.to_json().find("\"sensitivity\": null") != std::string::npos);
}
