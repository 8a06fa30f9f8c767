#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lexatom/corpus.hpp"
#include "lexatom/features.hpp"
#include "lexatom/forest.hpp"
#include "lexatom/metrics.hpp"
#include "lexatom/smote.hpp"
#include "lexatom/stats.hpp"
#include "lexatom/validation.hpp"

namespace lexatom {

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

struct ExperimentOptions {
  bool remove_roman = false;
  double alpha = 0.001;
  std::size_t max_position = 6;
  TestKind test = TestKind::welch;
  ForestParams forest;
  CrossValidationOptions cv;
  // Restrict the classifier to these variables (after null removal).
  std::optional<std::vector<VariableId>> variable_subset;
};

struct ExperimentResult {
  FilterReport filter_report;
  LabeledCorpus corpus;
  SignificanceTable significance;
  VariableSet selected_variables;          // bp < alpha within max_position
  std::vector<VariableId> model_variables;  // classifier inputs
  ScoredLexicon scored;                     // out-of-fold
  Metrics metrics;
};

/// clean -> build corpus -> featurize -> drop null variables -> optional
/// subset -> significance table -> out-of-fold scoring -> metrics. A failure
/// is rethrown with the stage name prepended and the original ErrorKind.
ExperimentResult run_experiment(const std::vector<std::string>& simple_tokens,
                                const std::vector<std::string>& complex_tokens,
                                const ExperimentOptions& options);
ExperimentResult run_experiment(const std::vector<std::filesystem::path>& simple_files,
                                const std::vector<std::filesystem::path>& complex_files,
                                const ExperimentOptions& options);

/// Classifier inputs for a corpus: full featurization with null columns
/// dropped, optionally restricted to `subset`.
LabeledMatrix model_inputs(const LabeledCorpus& corpus,
                           const std::optional<std::vector<VariableId>>& subset = std::nullopt);

/// `n` variables drawn without replacement (seeded), returned in column order.
std::vector<VariableId> random_variable_subset(const std::vector<VariableId>& pool, std::size_t n,
                                               std::uint64_t seed);

// ---------------------------------------------------------------------------
// Final classifier and dictionary scoring
// ---------------------------------------------------------------------------

struct FinalModel {
  ForestModel model;
  Metrics training_metrics;  // self-classification of the real corpus words
};

/// Trains one forest on the whole SMOTE-balanced corpus.
FinalModel train_final_model(const LabeledCorpus& corpus, const ForestParams& params,
                             const SmoteParams& smote, double cutpoint = kDefaultCutpoint,
                             const std::optional<std::vector<VariableId>>& subset = std::nullopt);

struct DictionaryScores {
  ScoredLexicon scored;
  std::vector<Word> skipped;  // longer than the model's max length
};

DictionaryScores score_words(const ForestModel& model, const WordList& words,
                             double cutpoint = kDefaultCutpoint);

struct FinalScoring {
  FinalModel final_model;
  DictionaryScores dictionary;
};

/// train_final_model followed by score_words. Throws
/// `ErrorKind::empty_corpus` for an empty dictionary.
FinalScoring train_final_and_score(const LabeledCorpus& corpus, const WordList& dictionary,
                                   const ForestParams& params, const SmoteParams& smote,
                                   double cutpoint = kDefaultCutpoint);

/// Simple class: words scoring strictly below `low_cut` in any lexicon;
/// complex: strictly above `high_cut`. Then the usual within-class dedup and
/// between-class common-word removal.
CorpusBuild extremes_union(const std::vector<ScoredLexicon>& lexicons, double low_cut,
                           double high_cut);

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct LengthExtremes {
  std::size_t length = 0;
  ScoredWord lowest;
  ScoredWord highest;
  int lowest_syllables = 0;
  int highest_syllables = 0;
};

/// Lowest and highest scoring word per length, ties broken alphabetically.
std::vector<LengthExtremes> extremes_by_length(const ScoredLexicon& scored);
/// length,kind,word,label,score,syllables (two rows per length).
void write_length_extremes_csv(std::ostream& os, const std::vector<LengthExtremes>& rows);

struct DistStats {
  std::size_t n = 0;
  double mean = 0.0;
  double stdev = 0.0;  // n - 1 denominator; 0 for a single value
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
  // Absent when fewer than 4 values or zero variance.
  std::optional<double> skew;
  std::optional<double> kurtosis;

  std::string to_json() const;
};

/// Bias-corrected sample skewness (adjusted Fisher-Pearson, G1).
double sample_skewness(const std::vector<double>& values);
/// Bias-corrected sample excess kurtosis (G2, spreadsheet KURT).
double sample_excess_kurtosis(const std::vector<double>& values);

/// Throws `ErrorKind::too_few_values` for an empty input.
DistStats distribution_stats(const std::vector<double>& values);

struct LevelStats {
  std::string name;
  std::size_t word_count = 0;  // words found in the lexicon
  double mean = 0.0;
  double stdev = 0.0;
  bool single = false;  // stdev reported as 0 because word_count == 1
  std::size_t zero_count = 0;
  std::size_t one_count = 0;
  std::size_t missing = 0;  // level words absent from the lexicon
};

struct LevelReport {
  std::vector<LevelStats> levels;            // only levels with scored words
  std::vector<std::string> empty_levels;     // levels with no scored word
  std::size_t dropped_shared = 0;            // distinct words listed in 2+ levels

  /// level,word_count,mean,stdev,zero_count,one_count,missing,single
  void write_csv(std::ostream& os) const;
};

/// Words that appear in more than one level are dropped from all levels.
LevelReport evaluate_levels(const ScoredLexicon& scored,
                            const std::vector<std::pair<std::string, WordList>>& levels);

/// Vowel-group syllable estimate; display only.
int estimate_syllables(const Word& word);
int estimate_syllables(std::string_view word);

}  // namespace lexatom
