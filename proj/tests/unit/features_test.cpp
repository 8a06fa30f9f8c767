#include <doctest.h>

#include <numeric>
#include <random>
#include <sstream>

#include "lexatom/error.hpp"
#include "lexatom/features.hpp"
#include "support/fixtures.hpp"

using namespace lexatom;
using lexatom::testing::word;
using lexatom::testing::words;

TEST_CASE("variable ids use letter+position names and position-major columns") {
  CHECK(VariableId{'a', 1}.name() == "a1");
  CHECK(VariableId{'w', 4}.name() == "w4");
  CHECK(VariableId{'a', 1}.column() == 0);
  CHECK(VariableId{'z', 1}.column() == 25);
  CHECK(VariableId{'a', 2}.column() == 26);
  CHECK(VariableId::from_column(26 * 3 + 4) == VariableId{'e', 4});
  CHECK(VariableId::parse("k14") == VariableId{'k', 14});
  CHECK_THROWS_AS(VariableId::parse("A1"), Error);
  CHECK_THROWS_AS(VariableId::parse("a0"), Error);
  CHECK_THROWS_AS(VariableId::parse("a"), Error);
  CHECK_THROWS_AS(VariableId::parse("a1x"), Error);

  const auto vars = all_variables(2);
  REQUIRE(vars.size() == 52);
  CHECK(vars[0].name() == "a1");
  CHECK(vars[25].name() == "z1");
  CHECK(vars[26].name() == "a2");
}

TEST_CASE("max_word_length") {
  CHECK(max_word_length({words({"cat"}), words({"ubiquitous"})}) == 10);
}

TEST_CASE("featurize_word") {
  const auto v = featurize_word(word("cat"), 4);
  REQUIRE(v.size() == 104);
  CHECK(v[VariableId{'c', 1}.column()] == 1.0f);
  CHECK(v[VariableId{'a', 2}.column()] == 1.0f);
  CHECK(v[VariableId{'t', 3}.column()] == 1.0f);
  CHECK(std::accumulate(v.begin(), v.end(), 0.0f) == 3.0f);

  const auto aa = featurize_word(word("aa"), 2);
  CHECK(aa[0] == 1.0f);
  CHECK(aa[26] == 1.0f);

  const auto long_word = featurize_word(word("industrialisations"), 18);
  CHECK(std::accumulate(long_word.begin(), long_word.end(), 0.0f) == 18.0f);
  CHECK(decode_row(long_word) == "industrialisations");

  try {
    featurize_word(word("cats"), 3);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::length_exceeds_max);
  }
  try {
    featurize_text("ca7", 3);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_character);
  }
}

TEST_CASE("one-hot invariants hold for random words") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> len(2, 22);
  for (int i = 0; i < 500; ++i) {
    const auto text = lexatom::testing::random_letters(rng, len(rng));
    const auto v = featurize_word(word(text), 22);
    for (std::size_t p = 0; p < 22; ++p) {
      float sum = 0.0f;
      for (std::size_t l = 0; l < kAlphabetSize; ++l) sum += v[p * kAlphabetSize + l];
      CHECK(sum == (p < text.size() ? 1.0f : 0.0f));
    }
    CHECK(decode_row(v) == text);
  }
}

TEST_CASE("featurize_corpus orders simple rows first") {
  const auto out = featurize_corpus({words({"so"}), words({"ex"})}, 2);
  CHECK(out.matrix.rows() == 2);
  CHECK(out.matrix.cols() == 52);
  CHECK(out.labels == std::vector<int>{0, 1});
  CHECK(out.matrix.row_words() == std::vector<std::string>{"so", "ex"});
  CHECK(out.matrix.at(0, VariableId{'s', 1}.column()) == 1.0f);
  CHECK(out.matrix.at(1, VariableId{'x', 2}.column()) == 1.0f);

  CHECK_THROWS_AS(featurize_corpus({words({"so"}), WordList{}}, 2), Error);
  CHECK_THROWS_AS(featurize_corpus({words({"so"}), words({"exe"})}, 2), Error);
}

TEST_CASE("letter_positional_probability") {
  const auto list = words({"cat", "cup", "dog"});
  CHECK(letter_positional_probability(list, {'c', 1}) == doctest::Approx(2.0 / 3.0));
  CHECK(letter_positional_probability(list, {'z', 9}) == 0.0);
  CHECK(letter_positional_probability(list, {'o', 2}) == doctest::Approx(1.0 / 3.0));

  // Summed over the alphabet, a position's LPP is the share of words that long.
  const auto mixed = words({"at", "cat", "cart", "ox", "oxen"});
  for (std::size_t p = 1; p <= 5; ++p) {
    double total = 0.0;
    for (char l = 'a'; l <= 'z'; ++l) total += letter_positional_probability(mixed, {l, p});
    std::size_t long_enough = 0;
    for (const auto& w : mixed.words) long_enough += w.size() >= p ? 1 : 0;
    CHECK(total == doctest::Approx(static_cast<double>(long_enough) / 5.0));
  }
}

TEST_CASE("drop_null_variables keeps exactly the used columns") {
  const auto lm = featurize_corpus({words({"cat"}), words({"dog"})}, 3);
  const auto reduced = drop_null_variables(lm.matrix);
  std::vector<std::string> names;
  for (const auto& v : reduced.kept) names.push_back(v.name());
  CHECK(names == std::vector<std::string>{"c1", "d1", "a2", "o2", "g3", "t3"});
  CHECK(lm.matrix.cols() - reduced.matrix.cols() == 26 * 3 - 6);
  CHECK(decode_row(lm.matrix.row(0)) == "cat");

  // Never drops a column holding a 1.
  for (std::size_t c = 0; c < lm.matrix.cols(); ++c) {
    bool has_one = false;
    for (std::size_t r = 0; r < lm.matrix.rows(); ++r) has_one |= lm.matrix.at(r, c) == 1.0f;
    const bool kept = std::find(reduced.kept.begin(), reduced.kept.end(),
                                lm.matrix.variables()[c]) != reduced.kept.end();
    CHECK(kept == has_one);
  }
}

TEST_CASE("restrict_variables keeps column order") {
  const auto lm = featurize_corpus({words({"cat"}), words({"dog"})}, 3);
  const std::vector<VariableId> subset{{'t', 3}, {'c', 1}, {'q', 9}};
  const auto r = restrict_variables(lm.matrix, subset);
  REQUIRE(r.kept.size() == 2);
  CHECK(r.kept[0].name() == "c1");
  CHECK(r.kept[1].name() == "t3");
  CHECK(r.matrix.at(0, 0) == 1.0f);
  CHECK(r.matrix.at(1, 0) == 0.0f);
}

TEST_CASE("feature matrix and variable list text formats") {
  const auto lm = featurize_corpus({words({"ab"}), words({"ba"})}, 2);
  const auto reduced = drop_null_variables(lm.matrix);
  std::ostringstream csv;
  reduced.matrix.write_csv(csv);
  CHECK(csv.str() == "word,a1,b1,a2,b2\nab,1,0,0,1\nba,0,1,1,0\n");

  std::ostringstream vars_out;
  write_variable_list(vars_out, reduced.kept);
  std::istringstream vars_in(vars_out.str());
  CHECK(read_variable_list(vars_in) == reduced.kept);
}
