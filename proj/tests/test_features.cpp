#include <doctest.h>

#include <cmath>
#include <set>

#include "helpers.hpp"
#include "tlsel/features.hpp"
#include "tlsel/rng.hpp"

using namespace tlsel;
using namespace testutil;

namespace {

PostScores make_scores(const std::string& post_id, double sentiment,
                       double joy, double anger, double sadness,
                       double optimism) {
  return {post_id, sentiment, joy, anger, sadness, optimism};
}

int feature_index(const std::string& name) {
  const auto& names = feature_names();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

}  // namespace

TEST_CASE("score file parsing enforces ranges") {
  const std::string path = tmp_path("scores.jsonl");
  write_file(path,
             R"({"post_id":"p1","sentiment":0.5,"joy":0.9,"anger":0.1,"sadness":0.0,"optimism":1.0})"
             "\n"
             R"({"post_id":"p2","sentiment":-1.0,"joy":0.0,"anger":0.5,"sadness":0.25,"optimism":0.0})"
             "\n");
  const auto scores = read_scores_jsonl(path);
  REQUIRE(scores.size() == 2);
  CHECK(scores.at("p1").sentiment == 0.5);
  CHECK(scores.at("p2").optimism == 0.0);

  SUBCASE("sentiment outside [-1,1] fails") {
    write_file(path,
               R"({"post_id":"p1","sentiment":1.5,"joy":0,"anger":0,"sadness":0,"optimism":0})"
               "\n");
    CHECK_THROWS_AS(read_scores_jsonl(path), DataError);
  }
  SUBCASE("emotion outside [0,1] fails") {
    write_file(path,
               R"({"post_id":"p1","sentiment":0,"joy":-0.2,"anger":0,"sadness":0,"optimism":0})"
               "\n");
    CHECK_THROWS_AS(read_scores_jsonl(path), DataError);
  }
  SUBCASE("duplicate post ids fail") {
    write_file(path,
               R"({"post_id":"p1","sentiment":0,"joy":0,"anger":0,"sadness":0,"optimism":0})"
               "\n"
               R"({"post_id":"p1","sentiment":0,"joy":0,"anger":0,"sadness":0,"optimism":0})"
               "\n");
    CHECK_THROWS_AS(read_scores_jsonl(path), DataError);
  }
}

TEST_CASE("feature names are forty and unique") {
  const auto& names = feature_names();
  REQUIRE(static_cast<int>(names.size()) == kFeatureCount);
  std::set<std::string> unique(names.begin(), names.end());
  CHECK(unique.size() == names.size());
  CHECK(feature_index("sentiment_avg") >= 0);
  CHECK(feature_index("joy_std") >= 0);
  CHECK(feature_index("anger_diff_min") >= 0);
  CHECK(feature_index("optimism_diff_max") >= 0);
}

TEST_CASE("feature extraction summarizes levels and differences") {
  std::vector<Post> posts;
  std::map<std::string, PostScores> scores;
  // joy trail 0, 1, 0; sentiment trail -1, 0, 1
  for (int i = 0; i < 3; ++i) posts.push_back(make_post("u", i, Day(i)));
  scores[posts[0].post_id] = make_scores(posts[0].post_id, -1, 0, 0.2, 0, 0);
  scores[posts[1].post_id] = make_scores(posts[1].post_id, 0, 1, 0.2, 0, 0);
  scores[posts[2].post_id] = make_scores(posts[2].post_id, 1, 0, 0.2, 0, 0);

  const Vector f = extract_features(posts, scores);
  REQUIRE(f.size() == kFeatureCount);

  CHECK(f[feature_index("sentiment_avg")] == doctest::Approx(0.0));
  CHECK(f[feature_index("sentiment_min")] == doctest::Approx(-1.0));
  CHECK(f[feature_index("sentiment_max")] == doctest::Approx(1.0));
  CHECK(f[feature_index("joy_avg")] == doctest::Approx(1.0 / 3.0));
  CHECK(f[feature_index("joy_std")] ==
        doctest::Approx(std::sqrt(2.0) / 3.0));  // population std of 0,1,0
  CHECK(f[feature_index("anger_std")] == doctest::Approx(0.0));

  // diffs: sentiment 1,1; joy 1,-1
  CHECK(f[feature_index("sentiment_diff_avg")] == doctest::Approx(1.0));
  CHECK(f[feature_index("sentiment_diff_std")] == doctest::Approx(0.0));
  CHECK(f[feature_index("joy_diff_avg")] == doctest::Approx(0.0));
  CHECK(f[feature_index("joy_diff_min")] == doctest::Approx(-1.0));
  CHECK(f[feature_index("joy_diff_max")] == doctest::Approx(1.0));

  SUBCASE("a single post zeroes the difference block") {
    const Vector one = extract_features({posts[0]}, scores);
    for (int j = 20; j < kFeatureCount; ++j) CHECK(one[j] == 0.0);
    CHECK(one[feature_index("sentiment_avg")] == doctest::Approx(-1.0));
  }
  SUBCASE("missing scores name the offending post") {
    std::map<std::string, PostScores> partial = scores;
    partial.erase(posts[1].post_id);
    try {
      extract_features(posts, partial);
      FAIL("expected DataError");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).find(posts[1].post_id) !=
            std::string::npos);
    }
  }
  SUBCASE("empty timelines are rejected") {
    CHECK_THROWS_AS(extract_features({}, scores), std::invalid_argument);
  }
}

TEST_CASE("quartile labels cut the density distribution") {
  SUBCASE("uniform hundred") {
    std::vector<double> densities;
    for (int i = 0; i < 100; ++i) densities.push_back(i);
    const std::vector<int> labels = label_by_quartile(densities);
    int plus = 0, minus = 0, zero = 0;
    for (int l : labels) (l > 0 ? plus : l < 0 ? minus : zero)++;
    CHECK(plus == 25);
    CHECK(minus == 25);
    CHECK(zero == 50);
    CHECK(labels[0] == -1);
    CHECK(labels[99] == 1);
    CHECK(labels[50] == 0);
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(label_by_quartile({1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(label_by_quartile({2, 2, 2, 2}), std::invalid_argument);
  }
}

TEST_CASE("logistic gradient matches central finite differences") {
  Rng rng(13);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 6 + rng.uniform_int(10);
    const int p = 2 + rng.uniform_int(4);
    Matrix x(n, p);
    std::vector<int> y;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < p; ++j) x(i, j) = rng.uniform01() * 4 - 2;
      y.push_back(i % 2 == 0 ? 1 : -1);
    }
    Vector w(p);
    for (int j = 0; j < p; ++j) w[j] = rng.uniform01() - 0.5;
    const double b = rng.uniform01() - 0.5;
    const double l2 = rng.uniform01() * 2;

    Vector grad_w(p);
    double grad_b = 0;
    logreg_gradient(x, y, w, b, l2, grad_w, grad_b);

    const double h = 1e-6;
    for (int j = 0; j < p; ++j) {
      Vector hi = w, lo = w;
      hi[j] += h;
      lo[j] -= h;
      const double fd =
          (logreg_loss(x, y, hi, b, l2) - logreg_loss(x, y, lo, b, l2)) /
          (2 * h);
      CHECK(std::abs(grad_w[j] - fd) < 1e-5);
    }
    const double fd_b =
        (logreg_loss(x, y, w, b + h, l2) - logreg_loss(x, y, w, b - h, l2)) /
        (2 * h);
    CHECK(std::abs(grad_b - fd_b) < 1e-5);
  }
}

TEST_CASE("training separates a linearly separable cloud") {
  Rng rng(21);
  const int n = 60;
  Matrix x(n, kFeatureCount);
  std::vector<int> y;
  for (int i = 0; i < n; ++i) {
    const int label = i < n / 2 ? 1 : -1;
    y.push_back(label);
    for (int j = 0; j < kFeatureCount; ++j)
      x(i, j) = rng.uniform01() - 0.5;
    x(i, 0) += label * 2.0;      // separating direction
    x(i, 1) = 7.0;               // constant column: zero variance
  }

  const LogregModel m = train_logreg(x, y, 0.1);
  REQUIRE(m.coefficients.size() == kFeatureCount);

  // loss never increases across accepted steps
  for (std::size_t i = 1; i < m.loss_trace.size(); ++i)
    CHECK(m.loss_trace[i] <= m.loss_trace[i - 1] + 1e-12);

  // the separating feature dominates and predictions are correct
  CHECK(std::abs(m.coefficients[0]) > std::abs(m.coefficients[2]));
  int correct = 0;
  for (int i = 0; i < n; ++i) {
    const Vector row = x.row(i).transpose();
    if ((m.predict_logit(row) > 0 ? 1 : -1) == y[static_cast<std::size_t>(i)])
      ++correct;
  }
  CHECK(correct == n);
  CHECK(std::isfinite(m.intercept));
  CHECK(m.feature_std[1] == 1.0);  // constant column guard
}

TEST_CASE("training validates inputs") {
  Matrix x(4, 2);
  x.setZero();
  CHECK_THROWS_AS(train_logreg(x, {1, 1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(train_logreg(x, {1, -1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(train_logreg(x, {1, -1, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(train_logreg(x, {1, -1, 1, -1}, -0.5),
                  std::invalid_argument);
}
