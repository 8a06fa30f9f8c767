#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexatom/corpus.hpp"

namespace lexatom {

inline constexpr std::size_t kAlphabetSize = 26;

/// A binary letter-position variable, named like "a1" or "w4".
struct VariableId {
  char letter = 'a';
  std::size_t position = 1;  // 1-based

  std::string name() const;
  /// Column in the full position-major layout.
  std::size_t column() const noexcept {
    return (position - 1) * kAlphabetSize + static_cast<std::size_t>(letter - 'a');
  }
  static VariableId from_column(std::size_t column) noexcept;
  /// Parses "a1"-style names; throws `ErrorKind::parse` on anything else.
  static VariableId parse(std::string_view name);

  friend bool operator==(const VariableId&, const VariableId&) = default;
  // Position-major, then alphabetical: the column order.
  friend bool operator<(const VariableId& a, const VariableId& b) noexcept {
    return a.column() < b.column();
  }
};

/// Every variable for words up to `max_length` letters, in column order.
std::vector<VariableId> all_variables(std::size_t max_length);

using FeatureValue = float;
using FeatureVector = std::vector<FeatureValue>;

/// Dense row-major matrix; entries are 0/1 for real words and may be
/// fractional for synthetic rows.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::vector<VariableId> variables, std::size_t max_length);

  std::size_t rows() const noexcept { return row_words_.size(); }
  std::size_t cols() const noexcept { return variables_.size(); }
  std::size_t max_length() const noexcept { return max_length_; }

  std::span<const FeatureValue> row(std::size_t r) const {
    return {values_.data() + r * cols(), cols()};
  }
  FeatureValue at(std::size_t r, std::size_t c) const { return values_[r * cols() + c]; }

  const std::vector<VariableId>& variables() const noexcept { return variables_; }
  const std::vector<std::string>& row_words() const noexcept { return row_words_; }
  std::span<const FeatureValue> values() const noexcept { return values_; }

  /// Appends a row; `word` is empty for synthetic rows.
  void push_row(std::span<const FeatureValue> values, std::string word);

  /// Keeps only the given columns (indices into `variables()`), in order.
  FeatureMatrix select_columns(std::span<const std::size_t> columns) const;
  /// Keeps only the given rows, in order.
  FeatureMatrix select_rows(std::span<const std::size_t> rows) const;

  void write_csv(std::ostream& os) const;

 private:
  std::vector<VariableId> variables_;
  std::size_t max_length_ = 0;
  std::vector<FeatureValue> values_;
  std::vector<std::string> row_words_;
};

std::size_t max_word_length(const LabeledCorpus& corpus);

/// One-hot encodes each letter position; positions past the word are 0.
/// The vector has 26 * max_length entries.
FeatureVector featurize_word(const Word& word, std::size_t max_length);
/// Same as `featurize_word` for an arbitrary string. Throws
/// `ErrorKind::invalid_character` for anything outside a-z.
FeatureVector featurize_text(std::string_view word, std::size_t max_length);

/// Inverse of `featurize_word`: the argmax letter of every occupied position.
std::string decode_row(std::span<const FeatureValue> row);

struct LabeledMatrix {
  FeatureMatrix matrix;
  std::vector<int> labels;  // 0 = simple, 1 = complex
};

/// Simple class rows first, then complex.
LabeledMatrix featurize_corpus(const LabeledCorpus& corpus, std::size_t max_length);

/// Fraction of words with `v.letter` at `v.position`.
double letter_positional_probability(const WordList& list, const VariableId& v);

struct ReducedMatrix {
  FeatureMatrix matrix;
  std::vector<VariableId> kept;
};

/// Drops every column that is zero in all rows.
ReducedMatrix drop_null_variables(const FeatureMatrix& matrix);

/// Restricts the matrix to the variables in `subset` that it has, keeping
/// column order.
ReducedMatrix restrict_variables(const FeatureMatrix& matrix,
                                 std::span<const VariableId> subset);

std::vector<VariableId> read_variable_list(std::istream& in);
void write_variable_list(std::ostream& os, std::span<const VariableId> vars);

}  // namespace lexatom
