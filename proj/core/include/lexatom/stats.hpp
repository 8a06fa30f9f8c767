#pragma once

#include <cstddef>
#include <iosfwd>
#include <set>
#include <span>
#include <vector>

#include "lexatom/corpus.hpp"
#include "lexatom/features.hpp"

namespace lexatom {

// ---------------------------------------------------------------------------
// Distribution functions
// ---------------------------------------------------------------------------

/// Regularized incomplete beta I_x(a, b). `complement` must equal 1 - x; it is
/// taken separately so callers can pass it without cancellation.
double incomplete_beta(double a, double b, double x, double complement);
inline double incomplete_beta(double a, double b, double x) {
  return incomplete_beta(a, b, x, 1.0 - x);
}

/// P(|T| >= |t|) for Student's t with `df` degrees of freedom (df may be
/// non-integer; df = +inf gives the normal limit).
double student_t_two_tailed(double t, double df);

/// P(|Z| >= |z|) for a standard normal.
double normal_two_tailed(double z);

// ---------------------------------------------------------------------------
// Two-sample tests
// ---------------------------------------------------------------------------

enum class TestKind {
  welch,   // unequal variances, Welch-Satterthwaite df
  pooled,  // Student, pooled variance, df = n1 + n2 - 2
};

struct SampleSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // n - 1 denominator

  static SampleSummary of(std::span<const double> sample);
  /// Summary of a 0/1 sample with `ones` ones out of `n`.
  static SampleSummary of_binary(std::size_t ones, std::size_t n);
};

struct TestResult {
  double t = 0.0;
  double df = 0.0;  // +inf when both samples have zero variance
  double p = 1.0;   // two-tailed
};

/// Two-tailed two-sample t-test. When both variances are zero the result is
/// t = 0, p = 1 for equal means and t = +/-inf, p = 0 otherwise, with df = +inf.
/// Throws `ErrorKind::sample_too_small` unless both samples have 2+ values.
TestResult two_sample_t_test(const SampleSummary& x, const SampleSummary& y,
                             TestKind kind = TestKind::welch);
TestResult two_sample_t_test(std::span<const double> x, std::span<const double> y,
                             TestKind kind = TestKind::welch);

/// min(1, m * p).
double bonferroni(double p, std::size_t m);

// ---------------------------------------------------------------------------
// Significance tables
// ---------------------------------------------------------------------------

struct VariableStat {
  VariableId variable;
  double lpp_simple = 0.0;
  double lpp_complex = 0.0;
  TestResult test;
  double bp = 1.0;  // Bonferroni-adjusted p
};

struct SignificanceTable {
  std::vector<VariableStat> rows;  // column order
  std::size_t m = 0;               // number of tests, 26 * max length
  std::size_t n_simple = 0;
  std::size_t n_complex = 0;

  /// variable,letter,position,lpp_simple,lpp_complex,p,bp,p_exact,bp_exact
  void write_csv(std::ostream& os) const;
};

/// Tests every letter-position variable up to the corpus's longest word.
SignificanceTable variable_significance_table(const LabeledCorpus& corpus,
                                              TestKind kind = TestKind::welch);

using VariableSet = std::set<VariableId>;

/// Variables with bp < alpha at positions <= max_position.
VariableSet select_significant(const SignificanceTable& table, double alpha,
                               std::size_t max_position);

VariableSet intersect_significant(const VariableSet& a, const VariableSet& b);

}  // namespace lexatom
