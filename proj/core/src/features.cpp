#include "lexatom/features.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "lexatom/error.hpp"

namespace lexatom {

std::string VariableId::name() const {
  return std::string(1, letter) + std::to_string(position);
}

VariableId VariableId::from_column(std::size_t column) noexcept {
  return {static_cast<char>('a' + column % kAlphabetSize), column / kAlphabetSize + 1};
}

VariableId VariableId::parse(std::string_view name) {
  if (name.size() < 2 || name[0] < 'a' || name[0] > 'z') {
    throw Error(ErrorKind::parse, "bad variable name '" + std::string(name) + "'");
  }
  std::size_t position = 0;
  const auto digits = name.substr(1);
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), position);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || position == 0) {
    throw Error(ErrorKind::parse, "bad variable name '" + std::string(name) + "'");
  }
  return {name[0], position};
}

std::vector<VariableId> all_variables(std::size_t max_length) {
  std::vector<VariableId> vars;
  vars.reserve(max_length * kAlphabetSize);
  for (std::size_t c = 0; c < max_length * kAlphabetSize; ++c) {
    vars.push_back(VariableId::from_column(c));
  }
  return vars;
}

FeatureMatrix::FeatureMatrix(std::vector<VariableId> variables, std::size_t max_length)
    : variables_(std::move(variables)), max_length_(max_length) {}

void FeatureMatrix::push_row(std::span<const FeatureValue> values, std::string word) {
  if (values.size() != cols()) {
    throw Error(ErrorKind::dimension_mismatch,
                "row has " + std::to_string(values.size()) + " values, matrix has " +
                    std::to_string(cols()) + " columns");
  }
  values_.insert(values_.end(), values.begin(), values.end());
  row_words_.push_back(std::move(word));
}

FeatureMatrix FeatureMatrix::select_columns(std::span<const std::size_t> columns) const {
  std::vector<VariableId> vars;
  vars.reserve(columns.size());
  for (const auto c : columns) vars.push_back(variables_.at(c));
  FeatureMatrix out(std::move(vars), max_length_);
  out.values_.reserve(rows() * columns.size());
  for (std::size_t r = 0; r < rows(); ++r) {
    const auto src = row(r);
    for (const auto c : columns) out.values_.push_back(src[c]);
  }
  out.row_words_ = row_words_;
  return out;
}

FeatureMatrix FeatureMatrix::select_rows(std::span<const std::size_t> rows_to_keep) const {
  FeatureMatrix out(variables_, max_length_);
  out.values_.reserve(rows_to_keep.size() * cols());
  out.row_words_.reserve(rows_to_keep.size());
  for (const auto r : rows_to_keep) out.push_row(row(r), row_words_.at(r));
  return out;
}

void FeatureMatrix::write_csv(std::ostream& os) const {
  os << "word";
  for (const auto& v : variables_) os << ',' << v.name();
  os << '\n';
  for (std::size_t r = 0; r < rows(); ++r) {
    os << row_words_[r];
    for (const auto x : row(r)) os << ',' << x;
    os << '\n';
  }
}

std::size_t max_word_length(const LabeledCorpus& corpus) {
  std::size_t longest = 0;
  for (const auto* list : {&corpus.simple, &corpus.complex}) {
    for (const auto& w : list->words) longest = std::max(longest, w.size());
  }
  if (longest == 0) throw Error(ErrorKind::empty_corpus, "corpus has no words");
  return longest;
}

FeatureVector featurize_text(std::string_view word, std::size_t max_length) {
  if (word.size() > max_length) {
    throw Error(ErrorKind::length_exceeds_max,
                "'" + std::string(word) + "' is longer than " + std::to_string(max_length));
  }
  FeatureVector v(kAlphabetSize * max_length, FeatureValue{0});
  for (std::size_t p = 0; p < word.size(); ++p) {
    const char c = word[p];
    if (c < 'a' || c > 'z') {
      throw Error(ErrorKind::invalid_character, "'" + std::string(word) + "' has a non a-z letter");
    }
    v[p * kAlphabetSize + static_cast<std::size_t>(c - 'a')] = FeatureValue{1};
  }
  return v;
}

FeatureVector featurize_word(const Word& word, std::size_t max_length) {
  return featurize_text(word.str(), max_length);
}

std::string decode_row(std::span<const FeatureValue> row) {
  std::string out;
  for (std::size_t base = 0; base + kAlphabetSize <= row.size(); base += kAlphabetSize) {
    const auto slots = row.subspan(base, kAlphabetSize);
    const auto best = std::max_element(slots.begin(), slots.end());
    if (*best <= FeatureValue{0}) break;
    out.push_back(static_cast<char>('a' + (best - slots.begin())));
  }
  return out;
}

LabeledMatrix featurize_corpus(const LabeledCorpus& corpus, std::size_t max_length) {
  if (corpus.simple.empty() || corpus.complex.empty()) {
    throw Error(ErrorKind::empty_corpus, "both classes need at least one word");
  }
  LabeledMatrix out{FeatureMatrix(all_variables(max_length), max_length), {}};
  int label = 0;
  for (const auto* list : {&corpus.simple, &corpus.complex}) {
    for (const auto& w : list->words) {
      out.matrix.push_row(featurize_word(w, max_length), w.str());
      out.labels.push_back(label);
    }
    ++label;
  }
  return out;
}

double letter_positional_probability(const WordList& list, const VariableId& v) {
  if (list.empty()) throw Error(ErrorKind::empty_corpus, "word list is empty");
  std::size_t hits = 0;
  for (const auto& w : list.words) {
    if (w.size() >= v.position && w[v.position - 1] == v.letter) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(list.size());
}

ReducedMatrix drop_null_variables(const FeatureMatrix& matrix) {
  std::vector<bool> used(matrix.cols(), false);
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    const auto row = matrix.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] != FeatureValue{0}) used[c] = true;
    }
  }
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < used.size(); ++c) {
    if (used[c]) keep.push_back(c);
  }
  ReducedMatrix out{matrix.select_columns(keep), {}};
  out.kept = out.matrix.variables();
  return out;
}

ReducedMatrix restrict_variables(const FeatureMatrix& matrix,
                                 std::span<const VariableId> subset) {
  std::unordered_set<std::size_t> wanted;
  for (const auto& v : subset) wanted.insert(v.column());
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < matrix.cols(); ++c) {
    if (wanted.count(matrix.variables()[c].column())) keep.push_back(c);
  }
  ReducedMatrix out{matrix.select_columns(keep), {}};
  out.kept = out.matrix.variables();
  return out;
}

std::vector<VariableId> read_variable_list(std::istream& in) {
  std::vector<VariableId> vars;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    vars.push_back(VariableId::parse(std::string_view(line).substr(first, last - first + 1)));
  }
  return vars;
}

void write_variable_list(std::ostream& os, std::span<const VariableId> vars) {
  for (const auto& v : vars) os << v.name() << '\n';
}

}  // namespace lexatom
