// lexatom: letter-position word complexity analysis from the command line.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lexatom/corpus.hpp"
#include "lexatom/error.hpp"
#include "lexatom/features.hpp"
#include "lexatom/forest.hpp"
#include "lexatom/pipeline.hpp"
#include "lexatom/stats.hpp"
#include "lexatom/validation.hpp"

namespace fs = std::filesystem;
using namespace lexatom;

namespace {

std::uint64_t effective_seed(std::uint64_t flag_seed) {
  if (const char* env = std::getenv("LEXATOM_SEED"); env != nullptr && *env != '\0') {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorKind::invalid_argument, std::string("LEXATOM_SEED is not an integer: ") + env);
    }
  }
  return flag_seed;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  return out;
}

void write_text(const fs::path& path, const std::string& text) { open_out(path) << text; }

std::vector<std::string> read_all_tokens(const std::vector<std::string>& files) {
  std::vector<std::string> tokens;
  for (const auto& f : files) {
    auto more = read_tokens(fs::path(f));
    tokens.insert(tokens.end(), more.begin(), more.end());
  }
  return tokens;
}

std::vector<VariableId> read_variables_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open variable list " + path.string());
  return read_variable_list(in);
}

struct ForestFlags {
  std::size_t trees = 100;
  std::size_t min_split = 5;
  std::size_t max_depth = 0;
  std::size_t features_per_split = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--trees", trees, "Number of trees")->capture_default_str();
    cmd.add_option("--min-split", min_split, "Minimum samples to split a node")->capture_default_str();
    cmd.add_option("--max-depth", max_depth, "Maximum tree depth (0 = unlimited)");
    cmd.add_option("--features-per-split", features_per_split,
                   "Candidate variables per split (0 = floor(sqrt(d)))");
    cmd.add_option("--seed", seed, "Master seed (LEXATOM_SEED overrides)")->capture_default_str();
    cmd.add_option("--threads", threads, "Worker threads (0 = all cores)");
  }

  ForestParams params() const {
    ForestParams p;
    p.n_trees = trees;
    p.min_samples_split = min_split;
    if (max_depth > 0) p.max_depth = max_depth;
    if (features_per_split > 0) p.features_per_split = features_per_split;
    p.seed = effective_seed(seed);
    p.threads = threads;
    return p;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lexatom - letter positional probability word complexity analysis"};
  app.require_subcommand(1);

  // clean ------------------------------------------------------------------
  auto* clean = app.add_subcommand("clean", "Normalize and deduplicate a word list (stdin -> stdout)");
  bool clean_roman = false;
  std::string clean_report;
  clean->add_flag("--roman", clean_roman, "Drop Roman numerals");
  clean->add_option("--report", clean_report, "Write stage counts CSV");
  clean->callback([&] {
    const auto cleaned = clean_word_list(read_tokens(std::cin), clean_roman, "stdin");
    write_word_list(std::cout, cleaned.list);
    if (!clean_report.empty()) {
      auto out = open_out(clean_report);
      out << "stage,count\n"
          << "total," << cleaned.counts.total << '\n'
          << "cleaned," << cleaned.counts.cleaned << '\n'
          << "within_class_dedup," << cleaned.counts.deduplicated << '\n';
    }
  });

  // select -----------------------------------------------------------------
  auto* select = app.add_subcommand("select", "Pick the n lowest/highest rated words");
  std::string ratings_file;
  std::size_t select_n = 0;
  std::string select_end = "lowest";
  std::uint64_t select_seed = 0;
  std::string select_out;
  select->add_option("--ratings", ratings_file, "token<TAB>rating file")->required()->check(CLI::ExistingFile);
  select->add_option("--n", select_n, "Number of entries")->required();
  select->add_option("--end", select_end, "lowest or highest")->check(CLI::IsMember({"lowest", "highest"}));
  select->add_option("--seed", select_seed, "Seed for boundary tie sampling");
  select->add_option("-o,--output", select_out, "Output word list (default stdout)");
  select->callback([&] {
    const auto rated = read_rated_list(fs::path(ratings_file));
    const auto words = select_by_rating(rated, select_n,
                                        select_end == "lowest" ? RatingEnd::lowest : RatingEnd::highest,
                                        effective_seed(select_seed));
    if (select_out.empty()) {
      write_word_list(std::cout, words);
    } else {
      auto out = open_out(select_out);
      write_word_list(out, words);
    }
  });

  // stats ------------------------------------------------------------------
  auto* stats = app.add_subcommand("stats", "Per-variable significance table");
  std::vector<std::string> stats_simple, stats_complex;
  double stats_alpha = 0.001;
  std::size_t stats_max_pos = 6;
  bool stats_roman = false, stats_pooled = false;
  std::string stats_out, stats_selected, stats_report;
  stats->add_option("--simple", stats_simple, "Simple-class word list(s)")->required();
  stats->add_option("--complex", stats_complex, "Complex-class word list(s)")->required();
  stats->add_option("--alpha", stats_alpha, "Bonferroni significance level")->capture_default_str();
  stats->add_option("--max-position", stats_max_pos, "Largest position to select")->capture_default_str();
  stats->add_flag("--roman", stats_roman, "Drop Roman numerals while cleaning");
  stats->add_flag("--pooled", stats_pooled, "Pooled-variance Student t-test instead of Welch");
  stats->add_option("-o,--output", stats_out, "Significance table CSV")->required();
  stats->add_option("--selected", stats_selected, "Write selected variables (one per line)");
  stats->add_option("--report", stats_report, "Write filter report CSV");
  stats->callback([&] {
    const auto build =
        build_labeled_corpus(clean_word_list(read_all_tokens(stats_simple), stats_roman, "simple"),
                             clean_word_list(read_all_tokens(stats_complex), stats_roman, "complex"));
    const auto table = variable_significance_table(
        build.corpus, stats_pooled ? TestKind::pooled : TestKind::welch);
    {
      auto out = open_out(stats_out);
      table.write_csv(out);
    }
    const auto selected = select_significant(table, stats_alpha, stats_max_pos);
    if (!stats_selected.empty()) {
      auto out = open_out(stats_selected);
      const std::vector<VariableId> vars(selected.begin(), selected.end());
      write_variable_list(out, vars);
    }
    if (!stats_report.empty()) {
      auto out = open_out(stats_report);
      build.report.write_csv(out);
    }
    std::cerr << "m=" << table.m << " simple=" << table.n_simple << " complex=" << table.n_complex
              << " selected=" << selected.size() << '\n';
  });

  // train ------------------------------------------------------------------
  auto* train = app.add_subcommand("train", "Cross-validated classifier plus a final model");
  std::vector<std::string> train_simple, train_complex;
  ForestFlags train_forest;
  std::size_t train_folds = 10, train_smote_k = 5, train_random_vars = 0;
  bool train_roman = false, train_smote_round = false;
  double train_cutpoint = kDefaultCutpoint;
  std::string train_vars, train_model, train_scores, train_metrics, train_report, train_final;
  train->add_option("--simple", train_simple, "Simple-class word list(s)")->required();
  train->add_option("--complex", train_complex, "Complex-class word list(s)")->required();
  train_forest.add_to(*train);
  train->add_option("--folds", train_folds, "Cross-validation folds")->capture_default_str();
  train->add_option("--smote-k", train_smote_k, "SMOTE neighbours")->capture_default_str();
  train->add_flag("--smote-round", train_smote_round, "Round synthetic SMOTE entries to 0/1");
  train->add_flag("--roman", train_roman, "Drop Roman numerals while cleaning");
  train->add_option("--cutpoint", train_cutpoint, "Score cutpoint for the complex class")->capture_default_str();
  auto* vars_opt = train->add_option("--vars", train_vars, "Restrict to these variables (one per line)");
  train->add_option("--random-vars", train_random_vars, "Restrict to N random non-null variables (seeded)")
      ->excludes(vars_opt);
  train->add_option("-o,--model", train_model, "Model JSON")->required();
  train->add_option("--scores", train_scores, "Out-of-fold scores CSV")->required();
  train->add_option("--metrics", train_metrics, "Out-of-fold metrics JSON")->required();
  train->add_option("--report", train_report, "Write filter report CSV");
  train->add_option("--final-metrics", train_final, "Write final-model training-set metrics JSON");
  train->callback([&] {
    ExperimentOptions opt;
    opt.remove_roman = train_roman;
    opt.forest = train_forest.params();
    opt.cv.folds = train_folds;
    opt.cv.smote.k = train_smote_k;
    opt.cv.smote.round = train_smote_round;
    opt.cv.cutpoint = train_cutpoint;

    const auto simple_tokens = read_all_tokens(train_simple);
    const auto complex_tokens = read_all_tokens(train_complex);
    if (!train_vars.empty()) {
      opt.variable_subset = read_variables_file(train_vars);
    } else if (train_random_vars > 0) {
      const auto build = build_labeled_corpus(clean_word_list(simple_tokens, train_roman, "simple"),
                                              clean_word_list(complex_tokens, train_roman, "complex"));
      const auto pool = model_inputs(build.corpus).matrix.variables();
      opt.variable_subset = random_variable_subset(
          pool, train_random_vars, derive_seed(opt.forest.seed, 0x76617273, 0));
    }

    const auto result = run_experiment(simple_tokens, complex_tokens, opt);
    const auto final_model = train_final_model(result.corpus, opt.forest, opt.cv.smote,
                                               train_cutpoint, opt.variable_subset);
    write_text(train_model, final_model.model.to_json());
    {
      auto out = open_out(train_scores);
      result.scored.write_csv(out);
    }
    write_text(train_metrics, result.metrics.to_json());
    if (!train_final.empty()) write_text(train_final, final_model.training_metrics.to_json());
    if (!train_report.empty()) {
      auto out = open_out(train_report);
      result.filter_report.write_csv(out);
    }
    std::cerr << "variables=" << result.model_variables.size()
              << " accuracy=" << result.metrics.accuracy << " kappa=" << result.metrics.kappa << '\n';
  });

  // score ------------------------------------------------------------------
  auto* score = app.add_subcommand("score", "Score a word list with a trained model");
  std::string score_model, score_words_file, score_out, score_skipped;
  double score_cutpoint = kDefaultCutpoint;
  unsigned score_threads = 0;
  score->add_option("--model", score_model, "Model JSON")->required()->check(CLI::ExistingFile);
  score->add_option("--words", score_words_file, "Word list to score")->required()->check(CLI::ExistingFile);
  score->add_option("-o,--output", score_out, "Scores CSV")->required();
  score->add_option("--skipped", score_skipped, "Write words longer than the model's Lmax");
  score->add_option("--cutpoint", score_cutpoint, "Score cutpoint")->capture_default_str();
  score->add_option("--threads", score_threads, "Worker threads (0 = all cores)");
  score->callback([&] {
    std::ifstream in(score_model, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    auto model = ForestModel::from_json(buf.str());
    ForestParams p = model.params();
    p.threads = score_threads;
    model = ForestModel(model.trees(), model.variables(), model.max_length(), p);

    const auto dictionary = clean_word_list(read_tokens(fs::path(score_words_file)), false, "words");
    const auto scored = score_words(model, dictionary.list, score_cutpoint);
    {
      auto out = open_out(score_out);
      scored.scored.write_csv(out);
    }
    if (!scored.skipped.empty()) {
      std::cerr << "warning: " << scored.skipped.size() << " words longer than Lmax="
                << model.max_length() << " were skipped\n";
    }
    if (!score_skipped.empty()) {
      auto out = open_out(score_skipped);
      for (const auto& w : scored.skipped) out << w << '\n';
    }
  });

  // extremes ---------------------------------------------------------------
  auto* extremes = app.add_subcommand("extremes", "Build a corpus from extreme scores");
  std::vector<std::string> extremes_scores;
  double low_cut = 0.3, high_cut = 0.7;
  std::string extremes_out;
  extremes->add_option("--scores", extremes_scores, "Scores CSV files")->required()->check(CLI::ExistingFile);
  extremes->add_option("--low", low_cut, "Simple class: score < low")->capture_default_str();
  extremes->add_option("--high", high_cut, "Complex class: score > high")->capture_default_str();
  extremes->add_option("-o,--output", extremes_out, "Output directory")->required();
  extremes->callback([&] {
    std::vector<ScoredLexicon> lexicons;
    for (const auto& f : extremes_scores) lexicons.push_back(ScoredLexicon::read_csv(fs::path(f)));
    const auto build = extremes_union(lexicons, low_cut, high_cut);
    const fs::path dir(extremes_out);
    fs::create_directories(dir);
    {
      auto out = open_out(dir / "simple.txt");
      write_word_list(out, build.corpus.simple);
    }
    {
      auto out = open_out(dir / "complex.txt");
      write_word_list(out, build.corpus.complex);
    }
    auto out = open_out(dir / "filter_report.csv");
    build.report.write_csv(out);
  });

  // lengths ----------------------------------------------------------------
  auto* lengths = app.add_subcommand("lengths", "Lowest/highest scoring word per length");
  std::string lengths_scores, lengths_out;
  lengths->add_option("--scores", lengths_scores, "Scores CSV")->required()->check(CLI::ExistingFile);
  lengths->add_option("-o,--output", lengths_out, "Output CSV")->required();
  lengths->callback([&] {
    const auto rows = extremes_by_length(ScoredLexicon::read_csv(fs::path(lengths_scores)));
    auto out = open_out(lengths_out);
    write_length_extremes_csv(out, rows);
  });

  // dist -------------------------------------------------------------------
  auto* dist = app.add_subcommand("dist", "Descriptive statistics of scores");
  std::string dist_scores, dist_out;
  dist->add_option("--scores", dist_scores, "Scores CSV")->required()->check(CLI::ExistingFile);
  dist->add_option("-o,--output", dist_out, "Output JSON")->required();
  dist->callback([&] {
    const auto lex = ScoredLexicon::read_csv(fs::path(dist_scores));
    write_text(dist_out, distribution_stats(lex.scores()).to_json());
  });

  // levels -----------------------------------------------------------------
  auto* levels = app.add_subcommand("levels", "Score summary per graded word level");
  std::string levels_scores, levels_out;
  std::vector<std::string> level_specs;
  levels->add_option("--scores", levels_scores, "Scores CSV")->required()->check(CLI::ExistingFile);
  levels->add_option("--level", level_specs, "NAME=words.txt (repeatable, in level order)")->required();
  levels->add_option("-o,--output", levels_out, "Output CSV")->required();
  levels->callback([&] {
    std::vector<std::pair<std::string, WordList>> named;
    for (const auto& spec : level_specs) {
      const auto eq = spec.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw Error(ErrorKind::invalid_argument, "--level expects NAME=file, got '" + spec + "'");
      }
      const auto name = spec.substr(0, eq);
      auto cleaned = clean_word_list(read_tokens(fs::path(spec.substr(eq + 1))), false, name);
      named.emplace_back(name, std::move(cleaned.list));
    }
    const auto report = evaluate_levels(ScoredLexicon::read_csv(fs::path(levels_scores)), named);
    auto out = open_out(levels_out);
    report.write_csv(out);
    for (const auto& name : report.empty_levels) {
      std::cerr << "warning: level " << name << " has no scored words\n";
    }
    if (report.dropped_shared > 0) {
      std::cerr << report.dropped_shared << " words listed in more than one level were dropped\n";
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.kind()) << "]: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
