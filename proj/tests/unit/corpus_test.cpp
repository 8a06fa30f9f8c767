#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_set>

#include "lexatom/corpus.hpp"
#include "lexatom/error.hpp"
#include "support/fixtures.hpp"

using namespace lexatom;
using lexatom::testing::word;
using lexatom::testing::words;

TEST_CASE("normalize_token") {
  CHECK(normalize_token("Cat")->str() == "cat");
  CHECK(normalize_token("UBIQUITOUS")->str() == "ubiquitous");
  CHECK_FALSE(normalize_token("don't"));
  CHECK_FALSE(normalize_token("I"));
  CHECK_FALSE(normalize_token("a"));
  CHECK_FALSE(normalize_token(""));
  CHECK_FALSE(normalize_token("well-known"));
  CHECK_FALSE(normalize_token("abc1"));
  CHECK_FALSE(normalize_token("caf\xc3\xa9"));  // diacritics are rejected, not folded
  CHECK(normalize_token("ox")->str() == "ox");
}

TEST_CASE("is_roman_numeral") {
  CHECK(is_roman_numeral(word("xiv")));
  CHECK(is_roman_numeral(word("XIV")));
  CHECK(is_roman_numeral(word("mcmxc")));
  CHECK_FALSE(is_roman_numeral(word("cat")));
  CHECK_FALSE(is_roman_numeral(word("iiii")));
  CHECK_FALSE(is_roman_numeral(word("vx")));
  // Real words that happen to follow the grammar.
  CHECK(is_roman_numeral(word("mix")));
  CHECK(is_roman_numeral(word("mi")));
}

TEST_CASE("clean_word_list applies every rule and counts each stage") {
  const auto out = clean_word_list({"Cat", "don't", "I", "XIV", "cat"}, true);
  REQUIRE(out.list.size() == 1);
  CHECK(out.list.words[0].str() == "cat");
  CHECK(out.counts.total == 5);
  CHECK(out.counts.cleaned == 2);
  CHECK(out.counts.deduplicated == 1);

  const auto kept_roman = clean_word_list({"Cat", "XIV"}, false);
  CHECK(kept_roman.list.size() == 2);

  const auto dogs = clean_word_list({"dog", "dog", "dog"}, false);
  REQUIRE(dogs.list.size() == 1);
  CHECK(dogs.list.words[0].str() == "dog");
}

TEST_CASE("clean_word_list keeps the first occurrence in order") {
  const auto out = clean_word_list({"b", "zebra", "apple", "Zebra", "mango", "apple"}, false);
  std::vector<std::string> got;
  for (const auto& w : out.list.words) got.push_back(w.str());
  CHECK(got == std::vector<std::string>{"zebra", "apple", "mango"});
}

TEST_CASE("clean_word_list rejects an unusable list") {
  try {
    clean_word_list({"a", "1", "x-y"}, false);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::empty_corpus);
  }
}

TEST_CASE("clean_word_list is idempotent") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> len(1, 8);
  std::uniform_int_distribution<int> ch(0, 61);
  const std::string alphabet = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456'-";
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::string> tokens;
    for (int i = 0; i < 200; ++i) {
      std::string t;
      for (int k = len(rng); k > 0; --k) t.push_back(alphabet[static_cast<std::size_t>(ch(rng)) % alphabet.size()]);
      tokens.push_back(t);
    }
    tokens.push_back("anchor");
    const auto once = clean_word_list(tokens, trial % 2 == 0);
    std::vector<std::string> again_tokens;
    for (const auto& w : once.list.words) again_tokens.push_back(w.str());
    const auto twice = clean_word_list(again_tokens, trial % 2 == 0);
    CHECK(twice.list.words == once.list.words);
    CHECK(once.counts.total >= once.counts.cleaned);
    CHECK(once.counts.cleaned >= once.counts.deduplicated);
  }
}

TEST_CASE("build_labeled_corpus removes common words from both classes") {
  const auto out = build_labeled_corpus(words({"cat", "dog"}), words({"dog", "ubiquitous"}));
  CHECK(out.corpus.simple.words == words({"cat"}).words);
  CHECK(out.corpus.complex.words == words({"ubiquitous"}).words);

  const auto disjoint = build_labeled_corpus(words({"cat", "sun"}), words({"ubiquitous"}));
  CHECK(disjoint.corpus.simple.size() == 2);
  CHECK(disjoint.corpus.complex.size() == 1);

  CHECK_THROWS_AS(build_labeled_corpus(words({"dog"}), words({"dog", "cat"})), Error);
}

TEST_CASE("filter report counts never increase stage to stage") {
  const auto simple = clean_word_list({"Cat", "cat", "dog", "sun", "XIV", "ox"}, true, "s");
  const auto complex = clean_word_list({"dog", "ubiquitous", "ephemeral", "it's"}, true, "c");
  const auto built = build_labeled_corpus(simple, complex);
  const auto& r = built.report;
  CHECK(r.simple.total >= r.simple.cleaned);
  CHECK(r.simple.cleaned >= r.simple.deduplicated);
  CHECK(r.simple.deduplicated >= r.simple_final);
  CHECK(r.complex.total >= r.complex.cleaned);
  CHECK(r.complex.cleaned >= r.complex.deduplicated);
  CHECK(r.complex.deduplicated >= r.complex_final);

  std::ostringstream csv;
  r.write_csv(csv);
  CHECK(csv.str() ==
        "stage,simple_count,complex_count\n"
        "total,6,4\n"
        "cleaned,5,3\n"
        "within_class_dedup,4,3\n"
        "between_class_removed,3,2\n");

  for (const auto& w : built.corpus.simple.words) CHECK_FALSE(built.corpus.complex.contains(w));
}

TEST_CASE("select_by_rating") {
  RatedWordList rated{"r", {{"aa", 1}, {"bb", 2}, {"cc", 3}}};
  const auto low = select_by_rating(rated, 2, RatingEnd::lowest, 1);
  CHECK(low.words == words({"aa", "bb"}).words);
  const auto high = select_by_rating(rated, 2, RatingEnd::highest, 1);
  CHECK(high.words == words({"cc", "bb"}).words);

  SUBCASE("no boundary tie is seed independent") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      CHECK(select_by_rating(rated, 2, RatingEnd::lowest, seed).words == low.words);
    }
  }

  SUBCASE("boundary tie group is sampled") {
    RatedWordList tied{"t", {{"aa", 1}, {"bb", 1}, {"cc", 1}, {"dd", 2}}};
    std::set<std::vector<Word>> outcomes;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto pick = select_by_rating(tied, 2, RatingEnd::lowest, seed);
      REQUIRE(pick.size() == 2);
      CHECK_FALSE(pick.contains(word("dd")));
      CHECK(pick.words == select_by_rating(tied, 2, RatingEnd::lowest, seed).words);
      outcomes.insert(pick.words);
    }
    CHECK(outcomes.size() == 3);  // every pair of the tie group shows up
  }

  SUBCASE("partial tie fills exactly n") {
    RatedWordList tied{"t", {{"aa", 0}, {"bb", 1}, {"cc", 1}, {"dd", 1}, {"ee", 5}}};
    const auto pick = select_by_rating(tied, 3, RatingEnd::lowest, 3);
    CHECK(pick.size() == 3);
    CHECK(pick.contains(word("aa")));
  }

  SUBCASE("un-normalizable tokens are dropped after selection") {
    RatedWordList messy{"m", {{"it's", 1}, {"Dog", 2}, {"cat", 3}}};
    const auto pick = select_by_rating(messy, 2, RatingEnd::lowest, 0);
    CHECK(pick.words == words({"dog"}).words);
  }

  CHECK_THROWS_AS(select_by_rating(rated, 4, RatingEnd::lowest, 0), Error);
}

TEST_CASE("word list and rated list readers") {
  std::istringstream list("# header comment\ncat\n\n  Dog \r\n#skip\nsun\n");
  CHECK(read_tokens(list) == std::vector<std::string>{"cat", "Dog", "sun"});

  std::istringstream with_header("word\trating\ncat\t1.5\ndog\t-2\n");
  const auto rated = read_rated_list(with_header, "x");
  REQUIRE(rated.entries.size() == 2);
  CHECK(rated.entries[0].token == "cat");
  CHECK(rated.entries[1].rating == -2.0);

  std::istringstream headless("cat\t1\ndog\t2\n");
  CHECK(read_rated_list(headless).entries.size() == 2);

  std::istringstream bad("cat\t1\ndog\tnope\n");
  CHECK_THROWS_AS(read_rated_list(bad), Error);

  std::istringstream infinite("cat\tinf\n");
  CHECK_THROWS_AS(read_rated_list(infinite), Error);
}
