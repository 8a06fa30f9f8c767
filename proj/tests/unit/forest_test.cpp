#include <doctest.h>

#include <random>

#include "lexatom/error.hpp"
#include "lexatom/forest.hpp"
#include "support/fixtures.hpp"

using namespace lexatom;

namespace {

// Column 0 equals the label; the other columns are noise.
LabeledMatrix label_column_data(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  LabeledMatrix out{FeatureMatrix({{'a', 1}, {'b', 1}, {'c', 1}, {'d', 1}}, 1), {}};
  for (std::size_t i = 0; i < n; ++i) {
    const int label = static_cast<int>(i % 2);
    const std::vector<FeatureValue> row{static_cast<FeatureValue>(label),
                                        static_cast<FeatureValue>(coin(rng)),
                                        static_cast<FeatureValue>(coin(rng)),
                                        static_cast<FeatureValue>(coin(rng))};
    out.matrix.push_row(row, "");
    out.labels.push_back(label);
  }
  return out;
}

}  // namespace

TEST_CASE("a feature equal to the label is learned perfectly") {
  const auto train = label_column_data(200, 1);
  const auto test = label_column_data(100, 2);
  ForestParams params;
  params.n_trees = 25;
  params.seed = 4;
  const auto model = train_random_forest(train.matrix, train.labels, params);
  const auto scores = model.predict_scores(test.matrix);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    CHECK((scores[i] >= 0.5 ? 1 : 0) == test.labels[i]);
  }
}

TEST_CASE("training is deterministic and independent of the thread count") {
  const auto data = label_column_data(120, 5);
  ForestParams params;
  params.n_trees = 12;
  params.seed = 77;
  params.threads = 1;
  const auto a = train_random_forest(data.matrix, data.labels, params).to_json();
  params.threads = 3;
  const auto b = train_random_forest(data.matrix, data.labels, params).to_json();
  CHECK(a == b);
  params.seed = 78;
  const auto c = train_random_forest(data.matrix, data.labels, params).to_json();
  CHECK(a != c);
}

TEST_CASE("json round trip is byte identical and predicts the same") {
  const auto corpus = lexatom::testing::first_letter_corpus(300, 0.1, 9);
  const auto lm = featurize_corpus(corpus, max_word_length(corpus));
  const auto reduced = drop_null_variables(lm.matrix);
  ForestParams params;
  params.n_trees = 10;
  params.max_depth = 6;
  params.seed = 3;
  const auto model = train_random_forest(reduced.matrix, lm.labels, params);
  const auto text = model.to_json();
  const auto back = ForestModel::from_json(text);
  CHECK(back.to_json() == text);
  CHECK(back.variables() == model.variables());
  CHECK(back.max_length() == model.max_length());
  CHECK(back.params().max_depth == std::optional<std::size_t>{6});
  for (const auto& w : corpus.simple.words) CHECK(back.score_word(w) == model.score_word(w));
  for (const auto& t : model.trees()) CHECK(t.depth() <= 6);

  CHECK_THROWS_AS(ForestModel::from_json("{not json"), Error);
  CHECK_THROWS_AS(ForestModel::from_json("{\"version\":99}"), Error);
}

TEST_CASE("score is the mean of the trees' leaf frequencies") {
  // Split on variable 0 at 0.5: left leaf p1 = 0.2, right leaf p1 = 0.9.
  auto split_tree = [](double left, double right) {
    std::vector<TreeNode> nodes(3);
    nodes[0].feature = 0;
    nodes[0].threshold = 0.5;
    nodes[0].left = 1;
    nodes[0].right = 2;
    nodes[1].leaf = {1 - left, left};
    nodes[2].leaf = {1 - right, right};
    return DecisionTree(nodes);
  };
  TreeNode constant;
  constant.leaf = {0.6, 0.4};
  const ForestModel model({split_tree(0.2, 0.9), DecisionTree({constant})}, {{'a', 1}, {'b', 2}}, 2,
                          ForestParams{});
  const std::vector<FeatureValue> zero{0, 1};
  const std::vector<FeatureValue> one{1, 0};
  CHECK(model.predict_score(zero) == doctest::Approx((0.2 + 0.4) / 2));
  CHECK(model.predict_score(one) == doctest::Approx((0.9 + 0.4) / 2));
  CHECK(model.score_word(lexatom::testing::word("ab")) == doctest::Approx(0.65));

  const std::vector<FeatureValue> wrong{1};
  try {
    model.predict_score(wrong);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::dimension_mismatch);
  }
  CHECK_THROWS_AS(model.score_word(lexatom::testing::word("abc")), Error);
}

TEST_CASE("training input errors") {
  FeatureMatrix m({{'a', 1}}, 1);
  for (int i = 0; i < 4; ++i) {
    const std::vector<FeatureValue> row{1};
    m.push_row(row, "");
  }
  const std::vector<int> one_class{1, 1, 1, 1};
  try {
    train_random_forest(m, one_class, ForestParams{});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::single_class);
  }
  const std::vector<int> short_labels{0, 1};
  CHECK_THROWS_AS(train_random_forest(m, short_labels, ForestParams{}), Error);

  ForestParams bad;
  bad.n_trees = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("candidates per split") {
  ForestParams p;
  CHECK(p.candidates_for(100) == 10);
  CHECK(p.candidates_for(99) == 9);
  CHECK(p.candidates_for(1) == 1);
  p.features_per_split = 500;
  CHECK(p.candidates_for(20) == 20);
}
