#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "helpers.hpp"
#include "tlsel/bocpd.hpp"
#include "tlsel/rng.hpp"

using namespace tlsel;
using namespace testutil;

namespace {

// Same predictive by a different route: pmf(0) = (b/(b+1))^a and the ratio
// pmf(x+1)/pmf(x) = (a+x) / ((x+1)(b+1)).
std::vector<double> nb_pmf_by_recurrence(int max_x, double alpha,
                                         double beta) {
  std::vector<double> pmf(static_cast<std::size_t>(max_x) + 1);
  pmf[0] = std::pow(beta / (beta + 1.0), alpha);
  for (int x = 0; x < max_x; ++x)
    pmf[static_cast<std::size_t>(x) + 1] =
        pmf[static_cast<std::size_t>(x)] * (alpha + x) / ((x + 1) * (beta + 1.0));
  return pmf;
}

DailyCountSeries series_from(const std::vector<int>& counts,
                             Day start = Day(0)) {
  DailyCountSeries s;
  s.start_day = start;
  s.counts = IntVector::Map(counts.data(),
                            static_cast<Eigen::Index>(counts.size()));
  return s;
}

// Exhaustive reference over run-length trajectories r_0=0,
// r_t in {0, r_{t-1}+1}: hazard terms times the predictive of each
// observation under its source run. The filtered column at day t
// marginalizes prefix paths weighted by observations up to t only; the
// MAP trajectory maximizes over full paths.
struct PathEnumeration {
  std::vector<std::map<int, double>> marginals;  // per day: run -> prob
  std::vector<int> map_path;
};

PathEnumeration enumerate_paths(const std::vector<int>& counts,
                                const PoissonGammaPrior& prior) {
  const int n = static_cast<int>(counts.size());
  const double log_h = std::log(1.0 / prior.hazard);
  const double log_g = std::log1p(-1.0 / prior.hazard);

  // bit s-1 of a mask decides step s: reset (1) or grow (0)
  const auto walk = [&](unsigned mask, int steps, std::vector<int>* path) {
    double logw = 0;
    int r = 0;
    if (path) path->assign(1, 0);
    for (int s = 1; s <= steps; ++s) {
      double run_sum = 0;
      for (int i = s - r; i < s; ++i)
        run_sum += counts[static_cast<std::size_t>(i)];
      logw += std::log(nb_predictive(counts[static_cast<std::size_t>(s)],
                                     prior.alpha0 + run_sum,
                                     prior.beta0 + r));
      const bool reset = (mask >> (s - 1)) & 1u;
      logw += reset ? log_h : log_g;
      r = reset ? 0 : r + 1;
      if (path) path->push_back(r);
    }
    return std::pair<double, int>(logw, r);
  };

  std::vector<std::map<int, double>> marginals(static_cast<std::size_t>(n));
  marginals[0][0] = 1.0;
  for (int t = 1; t < n; ++t) {
    std::map<int, double> acc;
    double total = 0;
    for (unsigned mask = 0; mask < (1u << t); ++mask) {
      const auto [logw, r] = walk(mask, t, nullptr);
      const double w = std::exp(logw);
      acc[r] += w;
      total += w;
    }
    for (auto& [_, p] : acc) p /= total;
    marginals[static_cast<std::size_t>(t)] = std::move(acc);
  }

  std::vector<int> best_path;
  double best_logw = -std::numeric_limits<double>::infinity();
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::vector<int> path;
    const double logw = walk(mask, n - 1, &path).first;
    if (logw > best_logw) {
      best_logw = logw;
      best_path = std::move(path);
    }
  }
  return {std::move(marginals), std::move(best_path)};
}

}  // namespace

TEST_CASE("negative binomial predictive closed form") {
  CHECK(nb_predictive(0, 1, 1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(nb_predictive(1, 1, 1) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(nb_predictive(0, 5, 2) ==
        doctest::Approx(32.0 / 243.0).epsilon(1e-12));
  CHECK(nb_predictive(2, 5, 2) ==
        doctest::Approx(480.0 / 2187.0).epsilon(1e-12));
  CHECK(std::exp(nb_log_predictive(2, 5, 2)) ==
        doctest::Approx(nb_predictive(2, 5, 2)).epsilon(1e-12));
}

TEST_CASE("negative binomial predictive matches an independent recurrence") {
  for (const auto& [alpha, beta] :
       std::vector<std::pair<double, double>>{{0.01, 10}, {1, 1}, {5, 2}}) {
    const std::vector<double> pmf = nb_pmf_by_recurrence(200, alpha, beta);
    for (int x = 0; x <= 200; ++x) {
      CHECK(nb_predictive(x, alpha, beta) ==
            doctest::Approx(pmf[static_cast<std::size_t>(x)])
                .epsilon(1e-10));
    }
  }
}

TEST_CASE("negative binomial predictive rejects bad parameters") {
  CHECK_THROWS_AS(nb_predictive(-1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(nb_predictive(0, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(nb_predictive(0, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(nb_predictive(0, -2, 1), std::invalid_argument);
}

TEST_CASE("run-length posterior matches exhaustive path enumeration") {
  const std::vector<int> counts = {3, 1, 4, 1, 5, 9, 2, 6, 5, 3};
  for (const PoissonGammaPrior prior :
       {PoissonGammaPrior{1, 1, 20}, PoissonGammaPrior{0.5, 2, 8}}) {
    const PathEnumeration ref = enumerate_paths(counts, prior);
    const RunLengthPosterior post = run_bocpd(series_from(counts), prior);

    REQUIRE(post.columns.size() == counts.size());
    for (std::size_t t = 0; t < counts.size(); ++t) {
      const RunLengthColumn& col = post.columns[t];
      for (std::size_t j = 0; j < col.runs.size(); ++j) {
        const auto it = ref.marginals[t].find(col.runs[j]);
        REQUIRE(it != ref.marginals[t].end());
        CHECK(col.probs[j] == doctest::Approx(it->second).epsilon(1e-9));
      }
      // pruned entries carry negligible true mass
      for (const auto& [run, p] : ref.marginals[t]) {
        const bool kept =
            std::find(col.runs.begin(), col.runs.end(), run) != col.runs.end();
        if (!kept) CHECK(p < 1e-9);
      }
    }

    const Segmentation seg = map_segmentation(post, series_from(counts));
    std::vector<Day> ref_changes;
    for (std::size_t t = 1; t < ref.map_path.size(); ++t)
      if (ref.map_path[t] == 0) ref_changes.push_back(Day(static_cast<int>(t)));
    CHECK(seg.change_days == ref_changes);
    CHECK(seg.map_run_lengths ==
          std::vector<int>(ref.map_path.begin(), ref.map_path.end()));
  }
}

TEST_CASE("posterior columns are normalized and runs ascend") {
  Rng rng(42);
  std::vector<int> counts;
  for (int i = 0; i < 300; ++i)
    counts.push_back(rng.poisson(i < 150 ? 2.0 : 11.0));
  const RunLengthPosterior post =
      run_bocpd(series_from(counts), {1, 1, 100});

  for (const RunLengthColumn& col : post.columns) {
    REQUIRE(!col.runs.empty());
    CHECK(std::is_sorted(col.runs.begin(), col.runs.end()));
    double sum = 0;
    for (double p : col.probs) {
      CHECK(p >= 0.0);
      sum += p;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(post.columns[0].runs == std::vector<int>{0});
  CHECK(post.columns[0].probs[0] == 1.0);
}

TEST_CASE("map segmentation finds a clean rate shift once") {
  std::vector<int> counts(80, 2);
  for (int i = 40; i < 80; ++i) counts[static_cast<std::size_t>(i)] = 20;
  const DailyCountSeries s = series_from(counts, Day(1000));
  const Segmentation seg = map_segmentation(run_bocpd(s, {1, 1, 50}), s);

  REQUIRE(seg.change_days.size() == 1);
  CHECK(std::abs(seg.change_days[0] - Day(1040)) <= 2);

  // run lengths along the path grow by one except at resets
  REQUIRE(seg.map_run_lengths.size() == counts.size());
  CHECK(seg.map_run_lengths[0] == 0);
  for (std::size_t t = 1; t < counts.size(); ++t) {
    const int r = seg.map_run_lengths[t];
    CHECK((r == 0 || r == seg.map_run_lengths[t - 1] + 1));
  }
}

TEST_CASE("constant series stays a single segment") {
  const std::vector<int> counts(200, 3);
  const DailyCountSeries s = series_from(counts);
  CHECK(map_segmentation(run_bocpd(s, kBocpdPreset1), s).change_days.empty());
  CHECK(map_segmentation(run_bocpd(s, {1, 1, 100}), s).change_days.empty());
}

TEST_CASE("huge hazard suppresses changes on homogeneous noise") {
  Rng rng(7);
  std::vector<int> counts;
  for (int i = 0; i < 200; ++i) counts.push_back(rng.poisson(5.0));
  const DailyCountSeries s = series_from(counts);
  const Segmentation seg = map_segmentation(run_bocpd(s, {1, 1, 1e9}), s);
  CHECK(seg.change_days.empty());
}

TEST_CASE("lower hazard never finds fewer changes overall") {
  long total10 = 0, total100 = 0, total1000 = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    std::vector<int> counts;
    for (int i = 0; i < 100; ++i)
      counts.push_back(rng.poisson(i < 50 ? 2.0 : 12.0));
    const DailyCountSeries s = series_from(counts);
    total10 += static_cast<long>(
        map_segmentation(run_bocpd(s, {1, 1, 10}), s).change_days.size());
    total100 += static_cast<long>(
        map_segmentation(run_bocpd(s, {1, 1, 100}), s).change_days.size());
    total1000 += static_cast<long>(
        map_segmentation(run_bocpd(s, {1, 1, 1000}), s).change_days.size());
  }
  CHECK(total10 >= total100);
  CHECK(total100 >= total1000);
  CHECK(total1000 >= 20);  // the planted shift stays detectable
}

TEST_CASE("segmentation is calendar equivariant") {
  Rng rng(3);
  std::vector<int> counts;
  for (int i = 0; i < 120; ++i)
    counts.push_back(rng.poisson(i < 60 ? 1.0 : 8.0));
  const PoissonGammaPrior prior{1, 1, 100};

  const DailyCountSeries a = series_from(counts, Day(0));
  const DailyCountSeries b = series_from(counts, Day(5000));
  const Segmentation sa = map_segmentation(run_bocpd(a, prior), a);
  const Segmentation sb = map_segmentation(run_bocpd(b, prior), b);

  REQUIRE(sa.change_days.size() == sb.change_days.size());
  for (std::size_t i = 0; i < sa.change_days.size(); ++i)
    CHECK(sb.change_days[i] - sa.change_days[i] == 5000);
  CHECK(sa.map_run_lengths == sb.map_run_lengths);
}

TEST_CASE("bocpd validates prior and series pairing") {
  const DailyCountSeries s = series_from({1, 2, 3});
  CHECK_THROWS_AS(run_bocpd(s, {0, 1, 100}), std::invalid_argument);
  CHECK_THROWS_AS(run_bocpd(s, {1, -1, 100}), std::invalid_argument);
  CHECK_THROWS_AS(run_bocpd(s, {1, 1, 0.5}), std::invalid_argument);

  const RunLengthPosterior post = run_bocpd(s, {1, 1, 10});
  CHECK_THROWS_AS(map_segmentation(post, series_from({1, 2, 3, 4})),
                  std::invalid_argument);
  CHECK_THROWS_AS(map_segmentation(post, series_from({1, 2, 3}, Day(9))),
                  std::invalid_argument);
}

TEST_CASE("history-level detection tags the method id") {
  std::vector<int> counts(40, 1);
  counts.resize(80, 15);
  const EventHistory h = history_from_counts("u", Day(200), counts);
  const std::vector<CandidateMoC> cmocs =
      detect_bocpd(h, {1, 1, 50}, kBocpdMethodId2);

  REQUIRE(!cmocs.empty());
  for (const CandidateMoC& c : cmocs) {
    CHECK(c.method_id == kBocpdMethodId2);
    CHECK(c.day >= h.first_day());
    CHECK(c.day <= h.last_day());
  }
}
