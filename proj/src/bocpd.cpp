#include "tlsel/bocpd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tlsel {

namespace {

constexpr double kPruneThreshold = 1e-12;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void validate(const PoissonGammaPrior& p) {
  if (!std::isfinite(p.alpha0) || !std::isfinite(p.beta0) ||
      !std::isfinite(p.hazard))
    throw std::invalid_argument("non-finite prior parameter");
  if (p.alpha0 <= 0 || p.beta0 <= 0)
    throw std::invalid_argument("alpha0 and beta0 must be positive");
  if (p.hazard < 1) throw std::invalid_argument("hazard must be >= 1");
}

double log_sum_exp(const std::vector<double>& v) {
  const double m = *std::max_element(v.begin(), v.end());
  if (m == kNegInf) return kNegInf;
  double s = 0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

// Cumulative counts; sums[k] = counts[0] + ... + counts[k-1].
std::vector<long long> prefix_sums(const IntVector& counts) {
  std::vector<long long> pre(static_cast<std::size_t>(counts.size()) + 1, 0);
  for (int i = 0; i < counts.size(); ++i) pre[i + 1] = pre[i] + counts[i];
  return pre;
}

// Log predictive of counts[t] given run length r at day t-1: the run holds
// counts[t-r..t-1], so alpha = alpha0 + their sum and beta = beta0 + r.
double log_predictive_at(const PoissonGammaPrior& prior,
                         const std::vector<long long>& pre,
                         const IntVector& counts, int t, int r) {
  const double alpha =
      prior.alpha0 + static_cast<double>(pre[t] - pre[t - r]);
  const double beta = prior.beta0 + r;
  return nb_log_predictive(counts[t], alpha, beta);
}

}  // namespace

double nb_log_predictive(int x, double alpha, double beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta))
    throw std::invalid_argument("non-finite predictive parameter");
  if (alpha <= 0 || beta <= 0)
    throw std::invalid_argument("alpha and beta must be positive");
  if (x < 0) throw std::invalid_argument("negative count");
  return std::lgamma(x + alpha) - std::lgamma(x + 1.0) - std::lgamma(alpha) +
         alpha * (std::log(beta) - std::log1p(beta)) - x * std::log1p(beta);
}

double nb_predictive(int x, double alpha, double beta) {
  return std::exp(nb_log_predictive(x, alpha, beta));
}

RunLengthPosterior run_bocpd(const DailyCountSeries& series,
                             const PoissonGammaPrior& prior) {
  validate(prior);
  const int n = series.size();
  if (n < 1) throw std::invalid_argument("empty series");

  RunLengthPosterior post;
  post.start_day = series.start_day;
  post.prior = prior;
  post.columns.resize(static_cast<std::size_t>(n));
  post.columns[0] = {{0}, {1.0}};

  const std::vector<long long> pre = prefix_sums(series.counts);
  const double log_h = std::log(1.0 / prior.hazard);
  const double log_1mh = std::log1p(-1.0 / prior.hazard);

  std::vector<double> lp;  // scratch: log of (prev prob * predictive)
  for (int t = 1; t < n; ++t) {
    const RunLengthColumn& prev = post.columns[t - 1];
    const std::size_t m = prev.runs.size();

    lp.resize(m);
    for (std::size_t j = 0; j < m; ++j)
      lp[j] = std::log(prev.probs[j]) +
              log_predictive_at(prior, pre, series.counts, t, prev.runs[j]);

    std::vector<int> runs(m + 1);
    std::vector<double> logp(m + 1);
    runs[0] = 0;
    logp[0] = log_sum_exp(lp) + log_h;
    for (std::size_t j = 0; j < m; ++j) {
      runs[j + 1] = prev.runs[j] + 1;
      logp[j + 1] = lp[j] + log_1mh;
    }

    const double norm = log_sum_exp(logp);
    RunLengthColumn col;
    double kept = 0;
    for (std::size_t j = 0; j < logp.size(); ++j) {
      const double p = std::exp(logp[j] - norm);
      if (p < kPruneThreshold) continue;
      col.runs.push_back(runs[j]);
      col.probs.push_back(p);
      kept += p;
    }
    for (double& p : col.probs) p /= kept;
    post.columns[t] = std::move(col);
  }
  return post;
}

Segmentation map_segmentation(const RunLengthPosterior& posterior,
                              const DailyCountSeries& series) {
  const int n = series.size();
  if (static_cast<int>(posterior.columns.size()) != n)
    throw std::invalid_argument("posterior/series dimension mismatch");
  if (posterior.start_day != series.start_day)
    throw std::invalid_argument("posterior/series start day mismatch");

  const PoissonGammaPrior& prior = posterior.prior;
  const std::vector<long long> pre = prefix_sums(series.counts);
  const double log_h = std::log(1.0 / prior.hazard);
  const double log_1mh = std::log1p(-1.0 / prior.hazard);

  // Best log path probability per live run-length entry, plus the previous
  // column's entry index feeding each reset to run 0.
  std::vector<std::vector<double>> best(static_cast<std::size_t>(n));
  std::vector<int> reset_from(static_cast<std::size_t>(n), -1);
  best[0].assign(posterior.columns[0].runs.size(), kNegInf);
  best[0][0] = 0.0;

  std::vector<int> prev_pos;  // run length -> entry index in previous column
  std::vector<double> lpi;
  for (int t = 1; t < n; ++t) {
    const RunLengthColumn& prev = posterior.columns[t - 1];
    const RunLengthColumn& cur = posterior.columns[t];
    const std::size_t m = prev.runs.size();

    prev_pos.assign(static_cast<std::size_t>(prev.runs.back()) + 1, -1);
    for (std::size_t j = 0; j < m; ++j)
      prev_pos[static_cast<std::size_t>(prev.runs[j])] = static_cast<int>(j);

    lpi.resize(m);
    for (std::size_t j = 0; j < m; ++j)
      lpi[j] = log_predictive_at(prior, pre, series.counts, t, prev.runs[j]);

    best[t].assign(cur.runs.size(), kNegInf);
    for (std::size_t k = 0; k < cur.runs.size(); ++k) {
      const int r = cur.runs[k];
      if (r == 0) {
        for (std::size_t j = 0; j < m; ++j) {
          const double cand = best[t - 1][j] + lpi[j] + log_h;
          if (cand > best[t][k]) {
            best[t][k] = cand;
            reset_from[t] = static_cast<int>(j);
          }
        }
      } else if (static_cast<std::size_t>(r - 1) < prev_pos.size() &&
                 prev_pos[static_cast<std::size_t>(r - 1)] >= 0) {
        const int j = prev_pos[static_cast<std::size_t>(r - 1)];
        best[t][k] = best[t - 1][static_cast<std::size_t>(j)] +
                     lpi[static_cast<std::size_t>(j)] + log_1mh;
      }
    }
  }

  Segmentation seg;
  seg.map_run_lengths.assign(static_cast<std::size_t>(n), 0);

  const std::vector<double>& last = best[static_cast<std::size_t>(n - 1)];
  int k = static_cast<int>(std::max_element(last.begin(), last.end()) -
                           last.begin());
  for (int t = n - 1; t >= 1; --t) {
    const RunLengthColumn& cur = posterior.columns[t];
    const int r = cur.runs[static_cast<std::size_t>(k)];
    seg.map_run_lengths[static_cast<std::size_t>(t)] = r;
    if (r == 0) {
      seg.change_days.push_back(series.day_at(t));
      k = reset_from[t];
    } else {
      const RunLengthColumn& prev = posterior.columns[t - 1];
      k = static_cast<int>(
          std::lower_bound(prev.runs.begin(), prev.runs.end(), r - 1) -
          prev.runs.begin());
    }
  }
  std::reverse(seg.change_days.begin(), seg.change_days.end());
  return seg;
}

std::vector<CandidateMoC> detect_bocpd(const EventHistory& history,
                                       const PoissonGammaPrior& prior,
                                       const std::string& method_id) {
  const DailyCountSeries series = to_daily_counts(history);
  const Segmentation seg = map_segmentation(run_bocpd(series, prior), series);
  std::vector<CandidateMoC> out;
  out.reserve(seg.change_days.size());
  for (Day d : seg.change_days) out.push_back({d, method_id});
  return out;
}

}  // namespace tlsel
