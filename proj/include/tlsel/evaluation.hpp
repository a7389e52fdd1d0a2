#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tlsel/core_model.hpp"

namespace tlsel {

struct MatchResult {
  int tp = 0;
  std::vector<std::pair<Day, Day>> matched_pairs;  // (ground truth, candidate)
  double precision = 0;
  double recall = 0;
};

// Maximum 1:1 matching between ground-truth and candidate days with
// |g - c| <= tau. With no candidates, precision is 0 against non-empty
// ground truth and 1 otherwise; recall is 1 whenever ground truth is empty.
MatchResult match_with_margin(const std::vector<Day>& g_days,
                              const std::vector<Day>& c_days, int tau);

struct Prf {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

// Arithmetic means over timelines; F1 is the harmonic mean of the mean
// precision and mean recall (0 when both are 0).
Prf aggregate_prf(const std::vector<MatchResult>& per_timeline);

// Segmentation covering: cut the span into segments at each change day
// (a change day starts a new segment), then weight every ground-truth
// segment by its best Jaccard overlap among predicted segments.
double covering_score(const std::vector<Day>& g_days,
                      const std::vector<Day>& c_days, Day start, Day end);

struct MedoidSummary {
  Day medoid_day;
  double density = 0;       // |G| / |posts|
  int density_binary = 0;   // +1 dense / -1 sparse, set by binarize step
};

// Ground-truth day minimizing summed absolute day distances to the others;
// ties broken by the earliest day. Empty ground truth has no medoid.
std::optional<MedoidSummary> find_medoid(const AnnotatedTimeline& timeline);

// +1 where density >= corpus median (midpoint of the middle two), else -1.
std::vector<int> binarize_density(const std::vector<double>& densities);

// Candidate days per user, sorted and de-duplicated.
using CmocsByUser = std::map<std::string, std::vector<Day>>;

struct VoteDetail {
  std::string timeline_id;
  double d_m = 0;        // min |CMoC - medoid| over the user's whole history
  double vote = 0;       // V contribution of this timeline
  int cmocs_in_span = 0;
};

// Raw Medoid-Votes total: per timeline with a medoid, d_m over ALL of the
// user's candidate days, D = (d_m + 0.001) * density sign, vote 1 iff
// 0 <= D <= tau, normalized by the candidate count inside the span.
double score_method(const CmocsByUser& cmocs,
                    const std::vector<AnnotatedTimeline>& timelines,
                    const std::vector<int>& density_binary, int tau,
                    std::vector<VoteDetail>* details = nullptr);

// Min-max scaling of raw totals to [0,1]; all 0.5 when the totals agree.
std::map<std::string, double> rank_methods(
    const std::map<std::string, double>& raw_totals);

enum class MvAggregate {
  sum_then_scale,   // sum raw totals over the tau range, then scale
  scale_then_mean,  // scale per tau across methods, then average
};

// Scaled Medoid-Votes over a range of margins.
std::map<std::string, double> mv_table(
    const std::map<std::string, CmocsByUser>& methods,
    const std::vector<AnnotatedTimeline>& timelines,
    const std::vector<int>& density_binary, const std::vector<int>& tau_range,
    MvAggregate aggregate = MvAggregate::sum_then_scale);

struct MethodScorecard {
  std::string method_id;
  double mean_precision = 0;
  double mean_recall = 0;
  double f1 = 0;
  double covering = 0;
  double raw_votes = 0;  // summed over the MV tau range
  double mv_scaled = 0;
};

struct EvalOptions {
  int tau = 5;
  std::vector<int> mv_tau_range = {0, 1, 2, 3, 4, 5, 6};
  MvAggregate mv_aggregate = MvAggregate::sum_then_scale;
  bool with_prf = true;
  bool with_covering = true;
  bool with_mv = true;
};

// Corpus-level evaluation of every method. Method ids sharing a stem before
// '#' (seeded variants such as random#0..random#99) are collapsed into one
// row by averaging their per-variant results; F1 and MV scaling are computed
// after averaging.
std::vector<MethodScorecard> evaluate_corpus(
    const std::map<std::string, CmocsByUser>& cmocs_by_method,
    const std::vector<AnnotatedTimeline>& timelines, const EvalOptions& opts);

}  // namespace tlsel
