#include "lexatom/validation.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "lexatom/error.hpp"
#include "lexatom/format.hpp"

namespace lexatom {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  for (auto& f : fields) {
    while (!f.empty() && (f.back() == '\r' || f.back() == ' ')) f.pop_back();
  }
  return fields;
}

double parse_score(const std::string& text, std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::parse, "scores line " + std::to_string(line_no) + ": bad score '" +
                                      text + "'");
  }
  return value;
}

}  // namespace

int classify(double score, double cutpoint) { return score >= cutpoint ? 1 : 0; }

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

void ScoredLexicon::add(std::string word, double score, std::optional<int> label) {
  entries.push_back({std::move(word), score, label, classify(score, cutpoint)});
}

std::vector<double> ScoredLexicon::scores() const {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.score);
  return out;
}

Metrics ScoredLexicon::metrics() const {
  std::vector<int> truth;
  std::vector<int> predicted;
  for (const auto& e : entries) {
    if (!e.label) continue;
    truth.push_back(*e.label);
    predicted.push_back(e.predicted);
  }
  return evaluate(truth, predicted);
}

void ScoredLexicon::write_csv(std::ostream& os) const {
  const bool labelled =
      std::any_of(entries.begin(), entries.end(), [](const auto& e) { return e.label.has_value(); });
  os << (labelled ? "word,score,label,predicted\n" : "word,score,predicted\n");
  for (const auto& e : entries) {
    os << e.word << ',' << format_exact(e.score) << ',';
    if (labelled) {
      if (e.label) os << *e.label;
      os << ',';
    }
    os << e.predicted << '\n';
  }
}

ScoredLexicon ScoredLexicon::read_csv(std::istream& in, double cutpoint) {
  ScoredLexicon lex;
  lex.cutpoint = cutpoint;
  std::string line;
  std::size_t line_no = 0;
  int label_col = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (line_no == 1 && !fields.empty() && fields[0] == "word") {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == "label") label_col = static_cast<int>(i);
      }
      continue;
    }
    if (fields.size() < 2) {
      throw Error(ErrorKind::parse, "scores line " + std::to_string(line_no) + ": too few fields");
    }
    std::optional<int> label;
    if (label_col >= 0 && static_cast<std::size_t>(label_col) < fields.size() &&
        !fields[static_cast<std::size_t>(label_col)].empty()) {
      const auto& f = fields[static_cast<std::size_t>(label_col)];
      if (f != "0" && f != "1") {
        throw Error(ErrorKind::parse, "scores line " + std::to_string(line_no) + ": bad label");
      }
      label = f == "1" ? 1 : 0;
    }
    lex.add(fields[0], parse_score(fields[1], line_no), label);
  }
  return lex;
}

ScoredLexicon ScoredLexicon::read_csv(const std::filesystem::path& path, double cutpoint) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open scores file " + path.string());
  return read_csv(in, cutpoint);
}

std::vector<std::size_t> stratified_folds(std::span<const int> labels, std::size_t folds,
                                          std::uint64_t seed) {
  if (folds < 2) throw Error(ErrorKind::invalid_argument, "need at least 2 folds");
  std::vector<std::size_t> fold_of(labels.size(), 0);
  for (int cls = 0; cls <= 1; ++cls) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if ((labels[i] == 1 ? 1 : 0) == cls) members.push_back(i);
    }
    if (members.size() < folds) {
      throw Error(ErrorKind::class_smaller_than_folds,
                  "class " + std::to_string(cls) + " has " + std::to_string(members.size()) +
                      " rows, fewer than " + std::to_string(folds) + " folds");
    }
    std::mt19937_64 rng(derive_seed(seed, 0x666f6c64, static_cast<std::uint64_t>(cls)));
    std::shuffle(members.begin(), members.end(), rng);
    for (std::size_t rank = 0; rank < members.size(); ++rank) fold_of[members[rank]] = rank % folds;
  }
  return fold_of;
}

ScoredLexicon cross_val_scores(const FeatureMatrix& matrix, std::span<const int> labels,
                               const ForestParams& params, const CrossValidationOptions& options) {
  if (labels.size() != matrix.rows()) {
    throw Error(ErrorKind::length_mismatch, "labels and matrix rows differ in count");
  }
  const auto fold_of = stratified_folds(labels, options.folds, params.seed);
  std::vector<double> scores(matrix.rows(), 0.0);

  for (std::size_t fold = 0; fold < options.folds; ++fold) {
    std::vector<std::size_t> train_rows;
    std::vector<std::size_t> test_rows;
    for (std::size_t r = 0; r < fold_of.size(); ++r) {
      (fold_of[r] == fold ? test_rows : train_rows).push_back(r);
    }
    std::vector<int> train_labels;
    train_labels.reserve(train_rows.size());
    for (const auto r : train_rows) train_labels.push_back(labels[r]);

    SmoteParams smote = options.smote;
    smote.seed = derive_seed(params.seed, 0x736d6f74, fold);
    const auto balanced = smote_balance(matrix.select_rows(train_rows), train_labels, smote);

    ForestParams fold_params = params;
    fold_params.seed = derive_seed(params.seed, 0x74726565, fold);
    const auto model = train_random_forest(balanced.matrix, balanced.labels, fold_params);
    for (const auto r : test_rows) scores[r] = model.predict_score(matrix.row(r));
  }

  ScoredLexicon lex;
  lex.cutpoint = options.cutpoint;
  lex.entries.reserve(matrix.rows());
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    lex.add(matrix.row_words()[r], scores[r], labels[r]);
  }
  return lex;
}

}  // namespace lexatom
