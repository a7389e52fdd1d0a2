#pragma once

#include <string>
#include <vector>

#include "tlsel/core_model.hpp"

namespace tlsel {

struct PoissonGammaPrior {
  double alpha0 = 1.0;  // Gamma shape
  double beta0 = 1.0;   // Gamma rate
  double hazard = 100.0;  // expected run length; change prob per day = 1/hazard
};

inline constexpr PoissonGammaPrior kBocpdPreset1{0.01, 10.0, 1000.0};
inline constexpr PoissonGammaPrior kBocpdPreset2{1.0, 1.0, 10.0};
inline constexpr const char* kBocpdMethodId1 = "bocpd_pg_1";
inline constexpr const char* kBocpdMethodId2 = "bocpd_pg_2";

// Negative-Binomial predictive of a Poisson count under a Gamma(alpha, beta)
// rate posterior: Gamma(x+a)/(x! Gamma(a)) * (b/(b+1))^a * (1/(b+1))^x.
double nb_predictive(int x, double alpha, double beta);
double nb_log_predictive(int x, double alpha, double beta);

// One day's run-length distribution. Entries below the pruning threshold are
// dropped; `runs` holds the surviving run lengths in ascending order.
struct RunLengthColumn {
  std::vector<int> runs;
  std::vector<double> probs;  // aligned with runs, sums to 1
};

struct RunLengthPosterior {
  Day start_day;
  PoissonGammaPrior prior;
  std::vector<RunLengthColumn> columns;  // one per series day
};

// Run-length recursion over the daily counts. Day 0 is a change point by
// definition (column [1.0] at run 0) and its count seeds no run statistics;
// a run of length r at day t holds the r counts on days t-r+1..t.
RunLengthPosterior run_bocpd(const DailyCountSeries& series,
                             const PoissonGammaPrior& prior);

struct Segmentation {
  std::vector<Day> change_days;      // strictly increasing
  std::vector<int> map_run_lengths;  // run length along the best path, per day
};

// Viterbi over run-length trajectories; change days are where the best path
// resets to run length 0 (day 0 excluded).
Segmentation map_segmentation(const RunLengthPosterior& posterior,
                              const DailyCountSeries& series);

std::vector<CandidateMoC> detect_bocpd(const EventHistory& history,
                                       const PoissonGammaPrior& prior,
                                       const std::string& method_id);

}  // namespace tlsel
