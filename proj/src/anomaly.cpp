#include "tlsel/anomaly.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "tlsel/stats.hpp"

namespace tlsel {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;

void validate(const AnomalyConfig& c) {
  if (c.window_days < c.silence_min_days)
    throw std::invalid_argument("window_days must be >= silence_min_days");
  if (c.silence_min_days < 1)
    throw std::invalid_argument("silence_min_days must be >= 1");
  if (!(c.prob_threshold > 0 && c.prob_threshold < 1))
    throw std::invalid_argument("prob_threshold must lie in (0,1)");
}

}  // namespace

KdeModel KdeModel::fit(const Vector& sample) {
  if (sample.size() == 0) throw std::invalid_argument("empty KDE sample");
  KdeModel m;
  m.sample_ = sample;
  const double sd = stddev_pop(sample);
  m.degenerate_ = sd == 0;
  const double scott =
      std::pow(static_cast<double>(sample.size()), -0.2) * sd;
  m.bandwidth_ = std::max(0.5, scott);
  return m;
}

double KdeModel::density(double x) const {
  const double inv_bw = 1.0 / bandwidth_;
  const double acc =
      (-0.5 * ((sample_.array() - x) * inv_bw).square()).exp().sum();
  return acc * kInvSqrt2Pi * inv_bw / static_cast<double>(sample_.size());
}

double kde_tail_probability(const KdeModel& model, double x) {
  if (model.degenerate()) return x > model.sample()[0] ? 0.0 : 1.0;

  const double bw = model.bandwidth();
  const double upper = model.sample().maxCoeff() + 8.0 * bw;
  if (x >= upper) return 0.0;

  // Knots sit at upper - k*step regardless of x, so tails for decreasing x
  // share their integration terms and stay monotone.
  const double step = bw / 10.0;
  double total = 0;
  double hi = upper;
  double f_hi = model.density(hi);
  for (int k = 1;; ++k) {
    double lo = upper - k * step;
    if (lo <= x) lo = x;
    const double f_lo = model.density(lo);
    total += 0.5 * (f_lo + f_hi) * (hi - lo);
    if (lo == x) break;
    hi = lo;
    f_hi = f_lo;
  }
  return std::clamp(total, 0.0, 1.0);
}

std::string anomaly_method_id(const AnomalyConfig& config) {
  std::string mode;
  switch (config.mode) {
    case AnomalyMode::high: mode = "high"; break;
    case AnomalyMode::low: mode = "low"; break;
    case AnomalyMode::high_and_low: mode = "high_low"; break;
  }
  return "ad_" + mode +
         (config.source == CountSource::posts ? "_posts" : "_comments");
}

std::vector<CandidateMoC> detect_high_activity(const EventHistory& history,
                                               const AnomalyConfig& config) {
  validate(config);
  std::vector<CandidateMoC> out;
  if (history.span_days() <= config.window_days) return out;

  const DailyCountSeries series = to_daily_counts(history, config.source);
  const std::string id = anomaly_method_id(config);
  Vector window(config.window_days);
  for (int t = config.window_days; t < series.size(); ++t) {
    for (int i = 0; i < config.window_days; ++i)
      window[i] = series.counts[t - config.window_days + i];
    const KdeModel model = KdeModel::fit(window);
    const double tail =
        kde_tail_probability(model, static_cast<double>(series.counts[t]));
    if (tail < config.prob_threshold) out.push_back({series.day_at(t), id});
  }
  return out;
}

std::vector<CandidateMoC> detect_silence(const EventHistory& history,
                                         const AnomalyConfig& config) {
  validate(config);
  std::vector<CandidateMoC> out;
  if (history.span_days() <= config.window_days) return out;

  const DailyCountSeries series = to_daily_counts(history, config.source);
  const std::string id = anomaly_method_id(config);
  const int n = series.size();

  for (int t = 0; t < n;) {
    if (series.counts[t] != 0) {
      ++t;
      continue;
    }
    int end = t;
    while (end < n && series.counts[end] == 0) ++end;  // zero run [t, end)
    const int run_len = end - t;
    if (run_len >= config.silence_min_days) {
      // Inter-event gaps between consecutive active days in the window
      // before the run; the run itself spans an active-day gap of run+1.
      std::vector<double> gaps;
      int prev_active = -1;
      for (int i = std::max(0, t - config.window_days); i < t; ++i) {
        if (series.counts[i] == 0) continue;
        if (prev_active >= 0) gaps.push_back(i - prev_active);
        prev_active = i;
      }
      if (!gaps.empty()) {
        const KdeModel model =
            KdeModel::fit(Eigen::Map<const Vector>(gaps.data(), gaps.size()));
        const double tail = kde_tail_probability(model, run_len + 1.0);
        if (tail < config.prob_threshold)
          out.push_back({series.day_at(t), id});
      }
    }
    t = end;
  }
  return out;
}

std::vector<CandidateMoC> detect_anomalies(const EventHistory& history,
                                           const AnomalyConfig& config) {
  validate(config);
  switch (config.mode) {
    case AnomalyMode::high: return detect_high_activity(history, config);
    case AnomalyMode::low: return detect_silence(history, config);
    case AnomalyMode::high_and_low: break;
  }
  const std::vector<CandidateMoC> high = detect_high_activity(history, config);
  const std::vector<CandidateMoC> low = detect_silence(history, config);
  const std::string id = anomaly_method_id(config);
  std::set<Day> days;
  for (const CandidateMoC& c : high) days.insert(c.day);
  for (const CandidateMoC& c : low) days.insert(c.day);
  std::vector<CandidateMoC> out;
  out.reserve(days.size());
  for (Day d : days) out.push_back({d, id});
  return out;
}

}  // namespace tlsel
