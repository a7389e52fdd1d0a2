#include "tlsel/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tlsel {

namespace {

std::vector<Day> sorted_unique(std::vector<Day> days) {
  std::sort(days.begin(), days.end());
  days.erase(std::unique(days.begin(), days.end()), days.end());
  return days;
}

// Inclusive day intervals [a, b] cut at each change day within the span.
struct Segment {
  int a;
  int b;
  int len() const { return b - a + 1; }
};

std::vector<Segment> to_segments(const std::vector<Day>& days, Day start,
                                 Day end) {
  std::vector<Segment> segs;
  int cur = start.since_epoch();
  for (Day d : days) {
    if (d <= start || d > end) continue;
    segs.push_back({cur, d.since_epoch() - 1});
    cur = d.since_epoch();
  }
  segs.push_back({cur, end.since_epoch()});
  return segs;
}

double jaccard(const Segment& x, const Segment& y) {
  const int inter = std::min(x.b, y.b) - std::max(x.a, y.a) + 1;
  if (inter <= 0) return 0;
  return static_cast<double>(inter) /
         static_cast<double>(x.len() + y.len() - inter);
}

std::vector<Day> days_in_span(const std::vector<Day>& days, Day start,
                              Day end) {
  std::vector<Day> out;
  for (Day d : days)
    if (start <= d && d <= end) out.push_back(d);
  return out;
}

std::string method_stem(const std::string& method_id) {
  const auto pos = method_id.find('#');
  return pos == std::string::npos ? method_id : method_id.substr(0, pos);
}

}  // namespace

MatchResult match_with_margin(const std::vector<Day>& g_days,
                              const std::vector<Day>& c_days, int tau) {
  if (tau < 0) throw std::invalid_argument("tau must be >= 0");
  const std::vector<Day> g = sorted_unique(g_days);
  const std::vector<Day> c = sorted_unique(c_days);

  MatchResult r;
  // Candidates connect to contiguous runs of ground-truth days, so pairing
  // each candidate with the earliest unmatched day in reach is a maximum
  // matching.
  std::size_t gi = 0;
  for (Day cd : c) {
    while (gi < g.size() && g[gi] - cd < -tau) ++gi;
    if (gi < g.size() && g[gi] - cd <= tau) {
      r.matched_pairs.emplace_back(g[gi], cd);
      ++gi;
    }
  }
  r.tp = static_cast<int>(r.matched_pairs.size());
  r.precision = c.empty() ? (g.empty() ? 1.0 : 0.0)
                          : static_cast<double>(r.tp) /
                                static_cast<double>(c.size());
  r.recall = g.empty() ? 1.0
                       : static_cast<double>(r.tp) /
                             static_cast<double>(g.size());
  return r;
}

Prf aggregate_prf(const std::vector<MatchResult>& per_timeline) {
  if (per_timeline.empty())
    throw std::invalid_argument("no timelines to aggregate");
  Prf out;
  for (const MatchResult& m : per_timeline) {
    out.precision += m.precision;
    out.recall += m.recall;
  }
  out.precision /= static_cast<double>(per_timeline.size());
  out.recall /= static_cast<double>(per_timeline.size());
  out.f1 = out.precision + out.recall == 0
               ? 0
               : 2 * out.precision * out.recall /
                     (out.precision + out.recall);
  return out;
}

double covering_score(const std::vector<Day>& g_days,
                      const std::vector<Day>& c_days, Day start, Day end) {
  if (end < start) throw std::invalid_argument("invalid span");
  const std::vector<Segment> gt = to_segments(sorted_unique(g_days), start, end);
  const std::vector<Segment> pred =
      to_segments(sorted_unique(c_days), start, end);
  const double total = end - start + 1;
  double acc = 0;
  for (const Segment& a : gt) {
    double best = 0;
    for (const Segment& b : pred) best = std::max(best, jaccard(a, b));
    acc += a.len() * best;
  }
  return acc / total;
}

std::optional<MedoidSummary> find_medoid(const AnnotatedTimeline& timeline) {
  const std::vector<Day>& g = timeline.gtmoc_days;
  if (g.empty() || timeline.posts.empty()) return std::nullopt;
  Day best = g.front();
  long long best_sum = std::numeric_limits<long long>::max();
  for (Day a : g) {
    long long sum = 0;
    for (Day b : g) sum += std::abs(a - b);
    if (sum < best_sum) {  // ties keep the earliest day
      best_sum = sum;
      best = a;
    }
  }
  MedoidSummary m;
  m.medoid_day = best;
  m.density = static_cast<double>(g.size()) /
              static_cast<double>(timeline.posts.size());
  return m;
}

std::vector<int> binarize_density(const std::vector<double>& densities) {
  if (densities.empty()) throw std::invalid_argument("no densities");
  std::vector<double> sorted = densities;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double median = n % 2 == 1
                            ? sorted[n / 2]
                            : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = densities[i] >= median ? 1 : -1;
  return out;
}

double score_method(const CmocsByUser& cmocs,
                    const std::vector<AnnotatedTimeline>& timelines,
                    const std::vector<int>& density_binary, int tau,
                    std::vector<VoteDetail>* details) {
  if (density_binary.size() != timelines.size())
    throw std::invalid_argument("density_binary/timelines size mismatch");
  if (tau < 0) throw std::invalid_argument("tau must be >= 0");

  double total = 0;
  for (std::size_t i = 0; i < timelines.size(); ++i) {
    const AnnotatedTimeline& t = timelines[i];
    const std::optional<MedoidSummary> medoid = find_medoid(t);
    if (!medoid) continue;

    VoteDetail detail;
    detail.timeline_id = t.timeline_id;

    const auto it = cmocs.find(t.user_id);
    const std::vector<Day> empty;
    const std::vector<Day>& user_days = it == cmocs.end() ? empty : it->second;
    for (Day d : user_days)
      if (t.start <= d && d <= t.end) ++detail.cmocs_in_span;

    if (!user_days.empty() && detail.cmocs_in_span > 0) {
      long long d_m = std::numeric_limits<long long>::max();
      for (Day d : user_days)
        d_m = std::min<long long>(d_m, std::abs(d - medoid->medoid_day));
      detail.d_m = static_cast<double>(d_m);
      const double scored = (detail.d_m + 0.001) * density_binary[i];
      const int vote = scored >= 0 && scored <= tau ? 1 : 0;
      detail.vote = static_cast<double>(vote) / detail.cmocs_in_span;
      total += detail.vote;
    }
    if (details) details->push_back(std::move(detail));
  }
  return total;
}

std::map<std::string, double> rank_methods(
    const std::map<std::string, double>& raw_totals) {
  if (raw_totals.size() < 2)
    throw std::invalid_argument("min-max scaling needs at least 2 methods");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& [_, v] : raw_totals) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::map<std::string, double> out;
  for (const auto& [k, v] : raw_totals)
    out[k] = hi == lo ? 0.5 : (v - lo) / (hi - lo);
  return out;
}

std::map<std::string, double> mv_table(
    const std::map<std::string, CmocsByUser>& methods,
    const std::vector<AnnotatedTimeline>& timelines,
    const std::vector<int>& density_binary, const std::vector<int>& tau_range,
    MvAggregate aggregate) {
  if (tau_range.empty()) throw std::invalid_argument("empty tau range");

  if (aggregate == MvAggregate::sum_then_scale) {
    std::map<std::string, double> totals;
    for (const auto& [id, cmocs] : methods) {
      double sum = 0;
      for (int tau : tau_range)
        sum += score_method(cmocs, timelines, density_binary, tau);
      totals[id] = sum;
    }
    return rank_methods(totals);
  }

  std::map<std::string, double> means;
  for (int tau : tau_range) {
    std::map<std::string, double> raw;
    for (const auto& [id, cmocs] : methods)
      raw[id] = score_method(cmocs, timelines, density_binary, tau);
    for (const auto& [id, v] : rank_methods(raw)) means[id] += v;
  }
  for (auto& [_, v] : means) v /= static_cast<double>(tau_range.size());
  return means;
}

std::vector<MethodScorecard> evaluate_corpus(
    const std::map<std::string, CmocsByUser>& cmocs_by_method,
    const std::vector<AnnotatedTimeline>& timelines, const EvalOptions& opts) {
  if (timelines.empty())
    throw std::invalid_argument("no annotated timelines");
  if (cmocs_by_method.empty())
    throw std::invalid_argument("no methods to evaluate");

  // Median-based density signs over the timelines that have a medoid.
  std::vector<int> density_binary(timelines.size(), 0);
  {
    std::vector<std::size_t> idx;
    std::vector<double> densities;
    for (std::size_t i = 0; i < timelines.size(); ++i) {
      if (const auto m = find_medoid(timelines[i])) {
        idx.push_back(i);
        densities.push_back(m->density);
      }
    }
    if (!densities.empty()) {
      const std::vector<int> bin = binarize_density(densities);
      for (std::size_t k = 0; k < idx.size(); ++k)
        density_binary[idx[k]] = bin[k];
    }
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();

  struct VariantResult {
    double precision = 0;
    double recall = 0;
    double covering = 0;
    std::vector<double> raw;  // one entry per tau in mv_tau_range
  };

  std::map<std::string, std::vector<VariantResult>> groups;
  for (const auto& [method_id, cmocs] : cmocs_by_method) {
    VariantResult vr;
    if (opts.with_prf || opts.with_covering) {
      std::vector<MatchResult> matches;
      double cov = 0;
      for (const AnnotatedTimeline& t : timelines) {
        const auto it = cmocs.find(t.user_id);
        const std::vector<Day> empty;
        const std::vector<Day> in_span = days_in_span(
            it == cmocs.end() ? empty : it->second, t.start, t.end);
        matches.push_back(match_with_margin(t.gtmoc_days, in_span, opts.tau));
        cov += covering_score(t.gtmoc_days, in_span, t.start, t.end);
      }
      const Prf prf = aggregate_prf(matches);
      vr.precision = prf.precision;
      vr.recall = prf.recall;
      vr.covering = cov / static_cast<double>(timelines.size());
    }
    if (opts.with_mv) {
      if (opts.mv_tau_range.empty())
        throw std::invalid_argument("empty tau range");
      for (int tau : opts.mv_tau_range)
        vr.raw.push_back(score_method(cmocs, timelines, density_binary, tau));
    }
    groups[method_stem(method_id)].push_back(std::move(vr));
  }

  // Seeded variants of one method average into a single row.
  std::map<std::string, VariantResult> collapsed;
  for (const auto& [stem, variants] : groups) {
    VariantResult acc;
    acc.raw.assign(opts.with_mv ? opts.mv_tau_range.size() : 0, 0.0);
    for (const VariantResult& v : variants) {
      acc.precision += v.precision;
      acc.recall += v.recall;
      acc.covering += v.covering;
      for (std::size_t k = 0; k < acc.raw.size(); ++k) acc.raw[k] += v.raw[k];
    }
    const double n = static_cast<double>(variants.size());
    acc.precision /= n;
    acc.recall /= n;
    acc.covering /= n;
    for (double& x : acc.raw) x /= n;
    collapsed[stem] = std::move(acc);
  }

  std::map<std::string, double> mv_scaled;
  if (opts.with_mv) {
    if (opts.mv_aggregate == MvAggregate::sum_then_scale) {
      std::map<std::string, double> totals;
      for (const auto& [stem, v] : collapsed) {
        double sum = 0;
        for (double x : v.raw) sum += x;
        totals[stem] = sum;
      }
      mv_scaled = rank_methods(totals);
    } else {
      for (std::size_t k = 0; k < opts.mv_tau_range.size(); ++k) {
        std::map<std::string, double> raw;
        for (const auto& [stem, v] : collapsed) raw[stem] = v.raw[k];
        for (const auto& [stem, s] : rank_methods(raw)) mv_scaled[stem] += s;
      }
      for (auto& [_, s] : mv_scaled)
        s /= static_cast<double>(opts.mv_tau_range.size());
    }
  }

  std::vector<MethodScorecard> out;
  for (const auto& [stem, v] : collapsed) {
    MethodScorecard row;
    row.method_id = stem;
    row.mean_precision = opts.with_prf ? v.precision : nan;
    row.mean_recall = opts.with_prf ? v.recall : nan;
    row.f1 = opts.with_prf
                 ? (v.precision + v.recall == 0
                        ? 0
                        : 2 * v.precision * v.recall /
                              (v.precision + v.recall))
                 : nan;
    row.covering = opts.with_covering ? v.covering : nan;
    if (opts.with_mv) {
      double sum = 0;
      for (double x : v.raw) sum += x;
      row.raw_votes = sum;
      row.mv_scaled = mv_scaled.at(stem);
    } else {
      row.raw_votes = nan;
      row.mv_scaled = nan;
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace tlsel
