#include "tlsel/timeline.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "tlsel/rng.hpp"

namespace tlsel {

Timeline to_record(const TimelineSpan& span) {
  return Timeline{span.timeline_id, span.user_id, span.start, span.end,
                  span.posts};
}

std::vector<TimelineSpan> build_timelines(
    const EventHistory& history, const std::vector<CandidateMoC>& cmocs,
    int radius_days) {
  if (radius_days <= 0)
    throw std::invalid_argument("radius_days must be positive");
  std::set<Day> seen;
  for (const CandidateMoC& c : cmocs)
    if (!seen.insert(c.day).second)
      throw std::invalid_argument("duplicate CandidateMoC day " +
                                  c.day.str() + " for user " +
                                  history.user_id());

  std::vector<TimelineSpan> out;
  out.reserve(cmocs.size());
  for (const CandidateMoC& c : cmocs) {
    TimelineSpan t;
    t.user_id = history.user_id();
    t.center = c.day;
    t.radius_days = radius_days;
    t.start = c.day - radius_days;
    t.end = c.day + radius_days;
    t.timeline_id = t.user_id + "_" + c.day.str();
    for (const Post& p : history.posts()) {
      const Day d = p.day();
      if (t.start <= d && d <= t.end) t.posts.push_back(p);
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<TimelineSpan> filter_timelines(std::vector<TimelineSpan> timelines,
                                           int min_posts, int max_posts) {
  if (min_posts > max_posts)
    throw std::invalid_argument("min_posts must not exceed max_posts");
  std::erase_if(timelines, [&](const TimelineSpan& t) {
    const int n = static_cast<int>(t.posts.size());
    return n < min_posts || n > max_posts;
  });
  return timelines;
}

std::vector<TimelineSpan> sample_one_per_user(
    const std::vector<TimelineSpan>& timelines, std::uint64_t seed) {
  std::map<std::string, std::vector<const TimelineSpan*>> by_user;
  for (const TimelineSpan& t : timelines) by_user[t.user_id].push_back(&t);

  std::vector<TimelineSpan> out;
  out.reserve(by_user.size());
  for (const auto& [user, spans] : by_user) {
    Rng rng(mix_seed(seed, user));
    out.push_back(*spans[static_cast<std::size_t>(
        rng.uniform_int(static_cast<int>(spans.size())))]);
  }
  return out;
}

}  // namespace tlsel
