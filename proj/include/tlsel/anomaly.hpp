#pragma once

#include <string>
#include <vector>

#include "tlsel/core_model.hpp"
#include "tlsel/types.hpp"

namespace tlsel {

// Gaussian-kernel density over a window of daily activity values.
class KdeModel {
 public:
  // Scott's rule bandwidth (n^(-1/5) * population std), floored at 0.5.
  static KdeModel fit(const Vector& sample);

  const Vector& sample() const { return sample_; }
  double bandwidth() const { return bandwidth_; }
  // All sample values identical; tail queries use a point-mass rule.
  bool degenerate() const { return degenerate_; }

  double density(double x) const;

 private:
  Vector sample_;
  double bandwidth_ = 0;
  bool degenerate_ = false;
};

// P(X >= x) by trapezoid integration up to max(sample) + 8 bandwidths with
// step bandwidth/10 (grid anchored at the upper limit). Degenerate models:
// 0 if x exceeds the constant, else 1.
double kde_tail_probability(const KdeModel& model, double x);

enum class AnomalyMode { high, low, high_and_low };

struct AnomalyConfig {
  int window_days = 90;
  int silence_min_days = 14;
  double prob_threshold = 0.01;
  CountSource source = CountSource::posts;
  AnomalyMode mode = AnomalyMode::high_and_low;
};

std::string anomaly_method_id(const AnomalyConfig& config);

// Days whose activity count is improbably high under a KDE fit to the
// trailing window_days of counts. Histories no longer than the window
// yield no candidates.
std::vector<CandidateMoC> detect_high_activity(const EventHistory& history,
                                               const AnomalyConfig& config);

// Starts of zero-activity runs of at least silence_min_days whose implied
// inter-event gap is improbably long under a KDE fit to the gaps seen in
// the window before the run.
std::vector<CandidateMoC> detect_silence(const EventHistory& history,
                                         const AnomalyConfig& config);

// Dispatch on mode; high_and_low unions the two lists, de-duplicated by day.
std::vector<CandidateMoC> detect_anomalies(const EventHistory& history,
                                           const AnomalyConfig& config);

}  // namespace tlsel
