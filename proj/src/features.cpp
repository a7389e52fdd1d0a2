#include "tlsel/features.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jsonl_util.hpp"
#include "tlsel/stats.hpp"

namespace tlsel {

namespace {

constexpr const char* kDims[] = {"sentiment", "joy", "anger", "sadness",
                                 "optimism"};
constexpr const char* kStats[] = {"avg", "std", "min", "max"};

double softplus(double t) {
  return t > 0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

double logistic(double t) {
  return t >= 0 ? 1.0 / (1.0 + std::exp(-t))
                : std::exp(t) / (1.0 + std::exp(t));
}

void write_stats(const Vector& series, Vector& out, int at) {
  out[at] = series.mean();
  out[at + 1] = stddev_pop(series);
  out[at + 2] = series.minCoeff();
  out[at + 3] = series.maxCoeff();
}

void check_range(double v, double lo, double hi, const char* key) {
  if (!(v >= lo && v <= hi))
    throw DataError(std::string("\"") + key + "\" outside [" +
                    std::to_string(lo) + "," + std::to_string(hi) + "]");
}

}  // namespace

std::map<std::string, PostScores> read_scores_jsonl(const std::string& path) {
  std::ifstream in = detail::open_in(path);
  std::map<std::string, PostScores> out;
  detail::for_each_record(in, path, [&](const nlohmann::json& j, int) {
    PostScores s;
    s.post_id = detail::require_string(j, "post_id");
    s.sentiment = detail::require_number(j, "sentiment");
    s.joy = detail::require_number(j, "joy");
    s.anger = detail::require_number(j, "anger");
    s.sadness = detail::require_number(j, "sadness");
    s.optimism = detail::require_number(j, "optimism");
    check_range(s.sentiment, -1, 1, "sentiment");
    check_range(s.joy, 0, 1, "joy");
    check_range(s.anger, 0, 1, "anger");
    check_range(s.sadness, 0, 1, "sadness");
    check_range(s.optimism, 0, 1, "optimism");
    if (!out.emplace(s.post_id, s).second)
      throw DataError("duplicate post_id \"" + s.post_id + "\"");
  });
  return out;
}

const std::vector<std::string>& feature_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const char* dim : kDims)
      for (const char* stat : kStats)
        v.push_back(std::string(dim) + "_" + stat);
    for (const char* dim : kDims)
      for (const char* stat : kStats)
        v.push_back(std::string(dim) + "_diff_" + stat);
    return v;
  }();
  return names;
}

Vector extract_features(const std::vector<Post>& posts,
                        const std::map<std::string, PostScores>& scores) {
  if (posts.empty()) throw std::invalid_argument("empty timeline");
  const int n = static_cast<int>(posts.size());

  Matrix values(n, 5);
  for (int i = 0; i < n; ++i) {
    const auto it = scores.find(posts[i].post_id);
    if (it == scores.end())
      throw DataError("no scores for post_id \"" + posts[i].post_id + "\"");
    const PostScores& s = it->second;
    values.row(i) << s.sentiment, s.joy, s.anger, s.sadness, s.optimism;
  }

  Vector out = Vector::Zero(kFeatureCount);
  for (int d = 0; d < 5; ++d) write_stats(values.col(d), out, 4 * d);
  if (n >= 2) {
    const Matrix diffs =
        values.bottomRows(n - 1) - values.topRows(n - 1);
    for (int d = 0; d < 5; ++d) write_stats(diffs.col(d), out, 20 + 4 * d);
  }
  return out;
}

std::vector<int> label_by_quartile(const std::vector<double>& densities) {
  if (densities.size() < 4)
    throw std::invalid_argument("need at least 4 timelines for quartiles");
  const double q1 = quantile(densities, 0.25);
  const double q3 = quantile(densities, 0.75);
  if (q1 == q3) throw std::invalid_argument("degenerate quartiles");
  std::vector<int> labels(densities.size(), 0);
  for (std::size_t i = 0; i < densities.size(); ++i) {
    if (densities[i] >= q3) labels[i] = 1;
    else if (densities[i] <= q1) labels[i] = -1;
  }
  return labels;
}

double logreg_loss(const Matrix& x, const std::vector<int>& y,
                   const Vector& w, double b, double l2) {
  const double n = static_cast<double>(x.rows());
  const Vector z = x * w + Vector::Constant(x.rows(), b);
  double acc = 0;
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    acc += softplus(-y[static_cast<std::size_t>(i)] * z[i]);
  return acc / n + 0.5 * l2 / n * w.squaredNorm();
}

void logreg_gradient(const Matrix& x, const std::vector<int>& y,
                     const Vector& w, double b, double l2, Vector& grad_w,
                     double& grad_b) {
  const double n = static_cast<double>(x.rows());
  const Vector z = x * w + Vector::Constant(x.rows(), b);
  Vector resid(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double yi = y[static_cast<std::size_t>(i)];
    resid[i] = -yi * logistic(-yi * z[i]);
  }
  grad_w = (x.transpose() * resid) / n + (l2 / n) * w;
  grad_b = resid.sum() / n;
}

double LogregModel::predict_logit(const Vector& features) const {
  const Vector z =
      (features - feature_mean).cwiseQuotient(feature_std);
  return z.dot(coefficients) + intercept;
}

LogregModel train_logreg(const Matrix& features,
                         const std::vector<int>& labels, double l2) {
  const Eigen::Index n = features.rows();
  const Eigen::Index d = features.cols();
  if (static_cast<std::size_t>(n) != labels.size())
    throw std::invalid_argument("features/labels size mismatch");
  if (n < 2) throw std::invalid_argument("need at least 2 examples");
  bool has_pos = false, has_neg = false;
  for (int y : labels) {
    if (y == 1) has_pos = true;
    else if (y == -1) has_neg = true;
    else throw std::invalid_argument("labels must be +1 or -1");
  }
  if (!has_pos || !has_neg)
    throw std::invalid_argument("single-class input");
  if (!(l2 >= 0)) throw std::invalid_argument("l2 must be >= 0");

  LogregModel m;
  m.feature_mean = features.colwise().mean();
  m.feature_std = Vector(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double sd = stddev_pop(features.col(j));
    m.feature_std[j] = sd == 0 ? 1.0 : sd;
  }
  Matrix x = features.rowwise() - m.feature_mean.transpose();
  x.array().rowwise() /= m.feature_std.transpose().array();

  Vector w = Vector::Zero(d);
  double b = 0;
  double loss = logreg_loss(x, labels, w, b, l2);
  double step = 1.0;
  Vector grad_w(d);
  double grad_b = 0;

  for (int it = 0; it < 10000; ++it) {
    logreg_gradient(x, labels, w, b, l2, grad_w, grad_b);
    const double grad_sq = grad_w.squaredNorm() + grad_b * grad_b;
    if (std::sqrt(grad_sq) < 1e-6) break;

    bool accepted = false;
    for (int half = 0; half < 60; ++half) {
      const Vector w_new = w - step * grad_w;
      const double b_new = b - step * grad_b;
      const double loss_new = logreg_loss(x, labels, w_new, b_new, l2);
      if (loss_new <= loss - 1e-4 * step * grad_sq) {
        w = w_new;
        b = b_new;
        loss = loss_new;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // step driven below useful size
    m.loss_trace.push_back(loss);
    ++m.iterations;
    step *= 2;
  }

  m.coefficients = std::move(w);
  m.intercept = b;
  return m;
}

}  // namespace tlsel
