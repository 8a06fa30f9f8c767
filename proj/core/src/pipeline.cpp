#include "lexatom/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "lexatom/error.hpp"
#include "lexatom/format.hpp"

namespace lexatom {

namespace {

// Runs `fn`, prefixing any library error with the stage that raised it.
template <typename Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string("stage '") + name + "': " + e.what());
  }
}

std::vector<std::string> read_all(const std::vector<std::filesystem::path>& files) {
  std::vector<std::string> tokens;
  for (const auto& f : files) {
    auto more = read_tokens(f);
    tokens.insert(tokens.end(), std::make_move_iterator(more.begin()),
                  std::make_move_iterator(more.end()));
  }
  return tokens;
}

bool is_vowel_at(std::string_view w, std::size_t i) {
  switch (w[i]) {
    case 'a': case 'e': case 'i': case 'o': case 'u': return true;
    case 'y': return i > 0;
    default: return false;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

LabeledMatrix model_inputs(const LabeledCorpus& corpus,
                           const std::optional<std::vector<VariableId>>& subset) {
  auto full = featurize_corpus(corpus, max_word_length(corpus));
  auto reduced = drop_null_variables(full.matrix);
  if (subset) {
    reduced = restrict_variables(reduced.matrix, *subset);
    if (reduced.kept.empty()) {
      throw Error(ErrorKind::invalid_argument, "none of the requested variables occur in the corpus");
    }
  }
  return {std::move(reduced.matrix), std::move(full.labels)};
}

ExperimentResult run_experiment(const std::vector<std::string>& simple_tokens,
                                const std::vector<std::string>& complex_tokens,
                                const ExperimentOptions& options) {
  ExperimentResult result;
  const auto simple = stage("clean simple", [&] {
    return clean_word_list(simple_tokens, options.remove_roman, "simple");
  });
  const auto complex = stage("clean complex", [&] {
    return clean_word_list(complex_tokens, options.remove_roman, "complex");
  });
  auto build = stage("build corpus", [&] { return build_labeled_corpus(simple, complex); });
  result.filter_report = build.report;
  result.corpus = std::move(build.corpus);

  const auto inputs =
      stage("featurize", [&] { return model_inputs(result.corpus, options.variable_subset); });
  result.model_variables = inputs.matrix.variables();

  result.significance = stage("significance", [&] {
    return variable_significance_table(result.corpus, options.test);
  });
  result.selected_variables =
      select_significant(result.significance, options.alpha, options.max_position);

  result.scored = stage("cross-validation", [&] {
    return cross_val_scores(inputs.matrix, inputs.labels, options.forest, options.cv);
  });
  result.metrics = stage("metrics", [&] { return result.scored.metrics(); });
  return result;
}

ExperimentResult run_experiment(const std::vector<std::filesystem::path>& simple_files,
                                const std::vector<std::filesystem::path>& complex_files,
                                const ExperimentOptions& options) {
  const auto simple = stage("read simple", [&] { return read_all(simple_files); });
  const auto complex = stage("read complex", [&] { return read_all(complex_files); });
  return run_experiment(simple, complex, options);
}

std::vector<VariableId> random_variable_subset(const std::vector<VariableId>& pool, std::size_t n,
                                               std::uint64_t seed) {
  if (n > pool.size()) {
    throw Error(ErrorKind::insufficient_entries, "cannot draw " + std::to_string(n) +
                                                     " variables from " +
                                                     std::to_string(pool.size()));
  }
  std::vector<VariableId> drawn = pool;
  std::mt19937_64 rng(seed);
  std::shuffle(drawn.begin(), drawn.end(), rng);
  drawn.resize(n);
  std::sort(drawn.begin(), drawn.end());
  return drawn;
}

// ---------------------------------------------------------------------------
// Final classifier
// ---------------------------------------------------------------------------

FinalModel train_final_model(const LabeledCorpus& corpus, const ForestParams& params,
                             const SmoteParams& smote, double cutpoint,
                             const std::optional<std::vector<VariableId>>& subset) {
  const auto inputs = model_inputs(corpus, subset);
  SmoteParams smote_final = smote;
  smote_final.seed = derive_seed(params.seed, 0x736d6f74, 0xf1a1);
  const auto balanced = smote_balance(inputs.matrix, inputs.labels, smote_final);

  FinalModel out{train_random_forest(balanced.matrix, balanced.labels, params), {}};
  const auto scores = out.model.predict_scores(inputs.matrix);
  std::vector<int> predicted;
  predicted.reserve(scores.size());
  for (const double s : scores) predicted.push_back(classify(s, cutpoint));
  out.training_metrics = evaluate(inputs.labels, predicted);
  return out;
}

DictionaryScores score_words(const ForestModel& model, const WordList& words, double cutpoint) {
  DictionaryScores out;
  out.scored.cutpoint = cutpoint;
  FeatureMatrix batch(model.variables(), model.max_length());
  for (const auto& w : words.words) {
    if (w.size() > model.max_length()) {
      out.skipped.push_back(w);
      continue;
    }
    batch.push_row(model.encode(w), w.str());
  }
  const auto scores = model.predict_scores(batch);
  out.scored.entries.reserve(scores.size());
  for (std::size_t r = 0; r < scores.size(); ++r) out.scored.add(batch.row_words()[r], scores[r]);
  return out;
}

FinalScoring train_final_and_score(const LabeledCorpus& corpus, const WordList& dictionary,
                                   const ForestParams& params, const SmoteParams& smote,
                                   double cutpoint) {
  if (dictionary.empty()) throw Error(ErrorKind::empty_corpus, "dictionary is empty");
  FinalScoring out{train_final_model(corpus, params, smote, cutpoint), {}};
  out.dictionary = score_words(out.final_model.model, dictionary, cutpoint);
  return out;
}

CorpusBuild extremes_union(const std::vector<ScoredLexicon>& lexicons, double low_cut,
                           double high_cut) {
  if (!(low_cut < high_cut)) {
    throw Error(ErrorKind::invalid_argument, "low cut must be below high cut");
  }
  std::vector<std::string> low;
  std::vector<std::string> high;
  for (const auto& lex : lexicons) {
    for (const auto& e : lex.entries) {
      if (e.score < low_cut) low.push_back(e.word);
      else if (e.score > high_cut) high.push_back(e.word);
    }
  }
  auto clean = [](const std::vector<std::string>& tokens, const char* name) {
    if (tokens.empty()) {
      throw Error(ErrorKind::empty_corpus, std::string("no words in the ") + name + " extreme");
    }
    return clean_word_list(tokens, false, name);
  };
  return build_labeled_corpus(clean(low, "simple"), clean(high, "complex"));
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

std::vector<LengthExtremes> extremes_by_length(const ScoredLexicon& scored) {
  std::map<std::size_t, LengthExtremes> by_length;
  for (const auto& e : scored.entries) {
    auto [it, inserted] = by_length.try_emplace(e.word.size());
    auto& row = it->second;
    if (inserted) {
      row.length = e.word.size();
      row.lowest = e;
      row.highest = e;
      continue;
    }
    if (e.score < row.lowest.score || (e.score == row.lowest.score && e.word < row.lowest.word)) {
      row.lowest = e;
    }
    if (e.score > row.highest.score ||
        (e.score == row.highest.score && e.word < row.highest.word)) {
      row.highest = e;
    }
  }
  std::vector<LengthExtremes> out;
  out.reserve(by_length.size());
  for (auto& [len, row] : by_length) {
    row.lowest_syllables = estimate_syllables(row.lowest.word);
    row.highest_syllables = estimate_syllables(row.highest.word);
    out.push_back(std::move(row));
  }
  return out;
}

void write_length_extremes_csv(std::ostream& os, const std::vector<LengthExtremes>& rows) {
  os << "length,kind,word,label,score,syllables\n";
  auto line = [&os](std::size_t len, const char* kind, const ScoredWord& w, int syllables) {
    os << len << ',' << kind << ',' << w.word << ',';
    if (w.label) os << *w.label;
    os << ',' << format_exact(w.score) << ',' << syllables << '\n';
  };
  for (const auto& r : rows) {
    line(r.length, "min", r.lowest, r.lowest_syllables);
    line(r.length, "max", r.highest, r.highest_syllables);
  }
}

namespace {

struct Moments {
  double n, mean, sd;
};

Moments moments_for_shape(const std::vector<double>& values, std::size_t min_n) {
  if (values.size() < min_n) {
    throw Error(ErrorKind::too_few_values, "need at least " + std::to_string(min_n) +
                                               " values, got " + std::to_string(values.size()));
  }
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  if (sd == 0.0) throw Error(ErrorKind::zero_variance, "values have zero variance");
  return {n, mean, sd};
}

}  // namespace

double sample_skewness(const std::vector<double>& values) {
  const auto [n, mean, sd] = moments_for_shape(values, 3);
  double sum = 0.0;
  for (const double v : values) sum += std::pow((v - mean) / sd, 3);
  return n / ((n - 1.0) * (n - 2.0)) * sum;
}

double sample_excess_kurtosis(const std::vector<double>& values) {
  const auto [n, mean, sd] = moments_for_shape(values, 4);
  double sum = 0.0;
  for (const double v : values) sum += std::pow((v - mean) / sd, 4);
  return n * (n + 1.0) / ((n - 1.0) * (n - 2.0) * (n - 3.0)) * sum -
         3.0 * (n - 1.0) * (n - 1.0) / ((n - 2.0) * (n - 3.0));
}

DistStats distribution_stats(const std::vector<double>& values) {
  if (values.empty()) throw Error(ErrorKind::too_few_values, "no values");
  DistStats s;
  s.n = values.size();
  const double n = static_cast<double>(s.n);
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (s.n > 1) {
    double ss = 0.0;
    for (const double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stdev = std::sqrt(ss / (n - 1.0));
  }
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  s.min = sorted.front();
  s.max = sorted.back();
  const std::size_t mid = s.n / 2;
  s.median = s.n % 2 == 1 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2.0;
  if (s.n >= 4 && s.stdev > 0.0) {
    s.skew = sample_skewness(values);
    s.kurtosis = sample_excess_kurtosis(values);
  }
  return s;
}

std::string DistStats::to_json() const {
  auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  const nlohmann::ordered_json doc = {
      {"n", n},
      {"mean", mean},
      {"stdev", stdev},
      {"median", median},
      {"min", min},
      {"max", max},
      {"skew", opt(skew)},
      {"kurtosis", opt(kurtosis)},
      {"estimators",
       "stdev: n-1 denominator; skew: adjusted Fisher-Pearson G1; kurtosis: sample excess G2"},
  };
  return doc.dump(2) + "\n";
}

LevelReport evaluate_levels(const ScoredLexicon& scored,
                            const std::vector<std::pair<std::string, WordList>>& levels) {
  std::unordered_map<std::string, double> score_of;
  for (const auto& e : scored.entries) score_of.try_emplace(e.word, e.score);

  std::unordered_map<std::string, std::size_t> level_count;
  for (const auto& [name, list] : levels) {
    std::unordered_set<std::string> seen;
    for (const auto& w : list.words) {
      if (seen.insert(w.str()).second) ++level_count[w.str()];
    }
  }

  LevelReport report;
  report.dropped_shared = static_cast<std::size_t>(
      std::count_if(level_count.begin(), level_count.end(),
                    [](const auto& kv) { return kv.second > 1; }));
  for (const auto& [name, list] : levels) {
    LevelStats stats;
    stats.name = name;
    std::vector<double> values;
    std::unordered_set<std::string> seen;
    for (const auto& w : list.words) {
      if (!seen.insert(w.str()).second || level_count[w.str()] > 1) continue;
      const auto it = score_of.find(w.str());
      if (it == score_of.end()) {
        ++stats.missing;
        continue;
      }
      values.push_back(it->second);
      if (it->second == 0.0) ++stats.zero_count;
      if (it->second == 1.0) ++stats.one_count;
    }
    if (values.empty()) {
      report.empty_levels.push_back(name);
      continue;
    }
    const auto d = distribution_stats(values);
    stats.word_count = values.size();
    stats.mean = d.mean;
    stats.stdev = d.stdev;
    stats.single = values.size() == 1;
    report.levels.push_back(std::move(stats));
  }
  return report;
}

void LevelReport::write_csv(std::ostream& os) const {
  os << "level,word_count,mean,stdev,zero_count,one_count,missing,single\n";
  for (const auto& l : levels) {
    os << l.name << ',' << l.word_count << ',' << format_exact(l.mean) << ','
       << format_exact(l.stdev) << ',' << l.zero_count << ',' << l.one_count << ',' << l.missing
       << ',' << (l.single ? 1 : 0) << '\n';
  }
}

int estimate_syllables(std::string_view w) {
  int groups = 0;
  bool in_group = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const bool vowel = is_vowel_at(w, i);
    if (vowel && !in_group) ++groups;
    in_group = vowel;
  }
  const std::size_t n = w.size();
  if (groups > 1 && n >= 2 && w[n - 1] == 'e' && !is_vowel_at(w, n - 2)) {
    // A final consonant + "le" (table, vulnerable) is voiced.
    const bool consonant_le = n >= 3 && w[n - 2] == 'l' && !is_vowel_at(w, n - 3);
    if (!consonant_le) --groups;
  }
  return std::max(groups, 1);
}

int estimate_syllables(const Word& word) { return estimate_syllables(std::string_view(word.str())); }

}  // namespace lexatom
