#pragma once

#include <map>
#include <string>
#include <vector>

#include "tlsel/core_model.hpp"
#include "tlsel/types.hpp"

namespace tlsel {

struct PostScores {
  std::string post_id;
  double sentiment = 0;  // [-1, 1]
  double joy = 0;        // each emotion in [0, 1]
  double anger = 0;
  double sadness = 0;
  double optimism = 0;
};

// scores-JSONL: {post_id, sentiment, joy, anger, sadness, optimism}.
std::map<std::string, PostScores> read_scores_jsonl(const std::string& path);

// 40 features: for each of the 5 score dimensions, (avg, std, min, max) of
// the per-post values, then the same four over consecutive-post differences.
inline constexpr int kFeatureCount = 40;

const std::vector<std::string>& feature_names();

// Posts must be in chronological order and each must have scores. A
// single-post timeline gets zero difference features.
Vector extract_features(const std::vector<Post>& posts,
                        const std::map<std::string, PostScores>& scores);

// +1 for the upper density quartile, -1 for the bottom quartile, 0 for the
// excluded middle. Quartiles by linear interpolation at index (n-1)p.
std::vector<int> label_by_quartile(const std::vector<double>& densities);

struct LogregModel {
  Vector coefficients;  // per z-scored feature
  double intercept = 0;
  Vector feature_mean;
  Vector feature_std;
  int iterations = 0;
  std::vector<double> loss_trace;  // per accepted iteration

  double predict_logit(const Vector& features) const;
};

// Regularized logistic loss and its gradient in (w, b), with the features
// already standardized. Exposed so optimizer behavior can be checked
// externally.
double logreg_loss(const Matrix& x, const std::vector<int>& y,
                   const Vector& w, double b, double l2);
void logreg_gradient(const Matrix& x, const std::vector<int>& y,
                     const Vector& w, double b, double l2, Vector& grad_w,
                     double& grad_b);

// Gradient descent with backtracking line search; stops when the gradient
// norm drops below 1e-6 or after 10^4 iterations. Labels are +1/-1.
LogregModel train_logreg(const Matrix& features, const std::vector<int>& labels,
                         double l2 = 1.0);

}  // namespace tlsel
