#include "lexatom/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "lexatom/error.hpp"
#include "lexatom/format.hpp"

namespace lexatom {

namespace {

constexpr int kMaxFractionTerms = 100000;
constexpr double kFractionEps = 1e-16;
constexpr double kTiny = 1e-300;

// Continued fraction for I_x(a, b), evaluated with the modified Lentz method.
// Converges quickly for x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxFractionTerms; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double step = d * c;
    h *= step;
    if (std::fabs(step - 1.0) < kFractionEps) return h;
  }
  throw Error(ErrorKind::degenerate, "incomplete beta continued fraction did not converge");
}

// x^a (1-x)^b / B(a, b). Extended precision keeps the log-gamma differences
// accurate for the large shape parameters that big samples produce.
double beta_prefactor(double a, double b, double x, double complement) {
  const long double la = a;
  const long double lb = b;
  const long double log_beta = std::lgamma(la) + std::lgamma(lb) - std::lgamma(la + lb);
  const long double log_front =
      la * std::log(static_cast<long double>(x)) +
      lb * std::log(static_cast<long double>(complement)) - log_beta;
  return static_cast<double>(std::exp(log_front));
}

}  // namespace

double incomplete_beta(double a, double b, double x, double complement) {
  if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0) || !(x <= 1.0)) {
    throw Error(ErrorKind::invalid_argument, "incomplete beta argument out of range");
  }
  if (x == 0.0) return 0.0;
  if (complement == 0.0) return 1.0;
  const double front = beta_prefactor(a, b, x, complement);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::clamp(front * beta_continued_fraction(a, b, x) / a, 0.0, 1.0);
  }
  return std::clamp(1.0 - front * beta_continued_fraction(b, a, complement) / b, 0.0, 1.0);
}

double normal_two_tailed(double z) {
  return std::erfc(std::fabs(z) / std::numbers::sqrt2);
}

double student_t_two_tailed(double t, double df) {
  if (std::isnan(t) || !(df > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "t distribution needs a number and df > 0");
  }
  if (t == 0.0) return 1.0;
  if (std::isinf(t)) return 0.0;
  if (std::isinf(df)) return normal_two_tailed(t);
  const double t2 = t * t;
  const double x = df / (df + t2);
  const double complement = t2 / (df + t2);
  return incomplete_beta(0.5 * df, 0.5, x, complement);
}

SampleSummary SampleSummary::of(std::span<const double> sample) {
  SampleSummary s;
  s.n = sample.size();
  if (s.n == 0) return s;
  double sum = 0.0;
  for (const double v : sample) sum += v;
  s.mean = sum / static_cast<double>(s.n);
  if (s.n > 1) {
    double ss = 0.0;
    for (const double v : sample) ss += (v - s.mean) * (v - s.mean);
    s.variance = ss / static_cast<double>(s.n - 1);
  }
  return s;
}

SampleSummary SampleSummary::of_binary(std::size_t ones, std::size_t n) {
  SampleSummary s;
  s.n = n;
  if (n == 0) return s;
  const auto k = static_cast<double>(ones);
  const auto nn = static_cast<double>(n);
  s.mean = k / nn;
  // sum (v - mean)^2 = k (n - k) / n for a 0/1 sample.
  if (n > 1) s.variance = k * (nn - k) / (nn * (nn - 1.0));
  return s;
}

TestResult two_sample_t_test(const SampleSummary& x, const SampleSummary& y, TestKind kind) {
  if (x.n < 2 || y.n < 2) {
    throw Error(ErrorKind::sample_too_small,
                "t-test needs at least 2 values per sample (got " + std::to_string(x.n) + " and " +
                    std::to_string(y.n) + ")");
  }
  const double n1 = static_cast<double>(x.n);
  const double n2 = static_cast<double>(y.n);
  const double diff = x.mean - y.mean;

  double se2 = 0.0;
  double df = 0.0;
  if (kind == TestKind::welch) {
    const double v1 = x.variance / n1;
    const double v2 = y.variance / n2;
    se2 = v1 + v2;
    df = se2 * se2 / (v1 * v1 / (n1 - 1.0) + v2 * v2 / (n2 - 1.0));
  } else {
    const double pooled =
        ((n1 - 1.0) * x.variance + (n2 - 1.0) * y.variance) / (n1 + n2 - 2.0);
    se2 = pooled * (1.0 / n1 + 1.0 / n2);
    df = n1 + n2 - 2.0;
  }

  TestResult r;
  if (se2 == 0.0) {
    r.df = std::numeric_limits<double>::infinity();
    if (diff == 0.0) return r;
    r.t = std::copysign(std::numeric_limits<double>::infinity(), diff);
    r.p = 0.0;
    return r;
  }
  r.t = diff / std::sqrt(se2);
  r.df = df;
  r.p = student_t_two_tailed(r.t, r.df);
  return r;
}

TestResult two_sample_t_test(std::span<const double> x, std::span<const double> y,
                             TestKind kind) {
  return two_sample_t_test(SampleSummary::of(x), SampleSummary::of(y), kind);
}

double bonferroni(double p, std::size_t m) {
  return std::min(1.0, static_cast<double>(m) * p);
}

SignificanceTable variable_significance_table(const LabeledCorpus& corpus, TestKind kind) {
  const std::size_t max_length = max_word_length(corpus);
  const std::size_t m = kAlphabetSize * max_length;

  auto count_columns = [m](const WordList& list) {
    std::vector<std::size_t> ones(m, 0);
    for (const auto& w : list.words) {
      for (std::size_t p = 0; p < w.size(); ++p) {
        ++ones[p * kAlphabetSize + static_cast<std::size_t>(w[p] - 'a')];
      }
    }
    return ones;
  };
  const auto simple_ones = count_columns(corpus.simple);
  const auto complex_ones = count_columns(corpus.complex);
  const std::size_t n_simple = corpus.simple.size();
  const std::size_t n_complex = corpus.complex.size();

  SignificanceTable table;
  table.m = m;
  table.n_simple = n_simple;
  table.n_complex = n_complex;
  table.rows.reserve(m);
  for (std::size_t c = 0; c < m; ++c) {
    VariableStat row;
    row.variable = VariableId::from_column(c);
    row.lpp_simple = static_cast<double>(simple_ones[c]) / static_cast<double>(n_simple);
    row.lpp_complex = static_cast<double>(complex_ones[c]) / static_cast<double>(n_complex);
    row.test = two_sample_t_test(SampleSummary::of_binary(simple_ones[c], n_simple),
                                 SampleSummary::of_binary(complex_ones[c], n_complex), kind);
    row.bp = bonferroni(row.test.p, m);
    table.rows.push_back(row);
  }
  return table;
}

void SignificanceTable::write_csv(std::ostream& os) const {
  os << "variable,letter,position,lpp_simple,lpp_complex,p,bp,p_exact,bp_exact\n";
  for (const auto& r : rows) {
    os << r.variable.name() << ',' << r.variable.letter << ',' << r.variable.position << ','
       << format_exact(r.lpp_simple) << ',' << format_exact(r.lpp_complex) << ','
       << format_fixed(r.test.p, 5) << ',' << format_fixed(r.bp, 5) << ','
       << format_exact(r.test.p) << ',' << format_exact(r.bp) << '\n';
  }
}

VariableSet select_significant(const SignificanceTable& table, double alpha,
                               std::size_t max_position) {
  VariableSet out;
  for (const auto& r : table.rows) {
    if (r.bp < alpha && r.variable.position <= max_position) out.insert(r.variable);
  }
  return out;
}

VariableSet intersect_significant(const VariableSet& a, const VariableSet& b) {
  VariableSet out;
  for (const auto& v : a) {
    if (b.count(v)) out.insert(v);
  }
  return out;
}

}  // namespace lexatom
