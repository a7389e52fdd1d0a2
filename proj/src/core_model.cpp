#include "tlsel/core_model.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace tlsel {

EventHistory EventHistory::from_posts(std::string user_id,
                                      std::vector<Post> posts) {
  if (posts.empty())
    throw std::invalid_argument("no events for user " + user_id);
  std::unordered_set<std::string> seen;
  for (const Post& p : posts) {
    if (p.comments_received < 0)
      throw std::invalid_argument("negative comments_received on post " +
                                  p.post_id);
    if (!seen.insert(p.post_id).second)
      throw std::invalid_argument("duplicate post_id " + p.post_id +
                                  " for user " + user_id);
  }
  std::stable_sort(posts.begin(), posts.end(),
                   [](const Post& a, const Post& b) {
                     return a.timestamp < b.timestamp;
                   });
  EventHistory h;
  h.user_id_ = std::move(user_id);
  h.posts_ = std::move(posts);
  return h;
}

DailyCountSeries to_daily_counts(const EventHistory& history,
                                 CountSource source) {
  if (history.posts().empty()) throw std::invalid_argument("no events");
  DailyCountSeries s;
  s.start_day = history.first_day();
  s.source = source;
  s.counts = IntVector::Zero(history.span_days());
  for (const Post& p : history.posts()) {
    const int i = p.day() - s.start_day;
    s.counts[i] += source == CountSource::posts ? 1 : p.comments_received;
  }
  return s;
}

AnnotatedTimeline aggregate_annotations(
    const Timeline& timeline,
    const std::vector<GroundTruthAnnotation>& annotations) {
  std::unordered_map<std::string, Day> day_of_post;
  for (const Post& p : timeline.posts) day_of_post.emplace(p.post_id, p.day());

  std::set<Day> days;
  auto add_post_day = [&](const std::string& post_id) {
    auto it = day_of_post.find(post_id);
    if (it == day_of_post.end())
      throw DataError("annotation references unknown post_id " + post_id +
                      " in timeline " + timeline.timeline_id);
    days.insert(it->second);
  };

  for (const GroundTruthAnnotation& a : annotations) {
    if (a.timeline_id != timeline.timeline_id)
      throw DataError("annotation for timeline " + a.timeline_id +
                      " applied to timeline " + timeline.timeline_id);
    if (a.label == MocLabel::None) continue;
    add_post_day(a.post_id);
    for (const std::string& pid : a.region_post_ids) add_post_day(pid);
  }

  AnnotatedTimeline out;
  out.timeline_id = timeline.timeline_id;
  out.user_id = timeline.user_id;
  out.start = timeline.start;
  out.end = timeline.end;
  out.posts = timeline.posts;
  out.gtmoc_days.assign(days.begin(), days.end());
  return out;
}

}  // namespace tlsel
