#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tlsel/date.hpp"
#include "tlsel/types.hpp"

namespace tlsel {

struct Post {
  std::string post_id;
  std::string user_id;
  std::int64_t timestamp = 0;  // epoch seconds, UTC
  std::optional<std::string> text;
  int comments_received = 0;

  Day day() const { return Day::from_epoch_seconds(timestamp); }

  friend bool operator==(const Post&, const Post&) = default;
};

// One user's posts, sorted ascending by timestamp (stable for ties).
class EventHistory {
 public:
  static EventHistory from_posts(std::string user_id, std::vector<Post> posts);

  const std::string& user_id() const { return user_id_; }
  const std::vector<Post>& posts() const { return posts_; }
  Day first_day() const { return posts_.front().day(); }
  Day last_day() const { return posts_.back().day(); }
  int span_days() const { return last_day() - first_day() + 1; }

  friend bool operator==(const EventHistory&, const EventHistory&) = default;

 private:
  std::string user_id_;
  std::vector<Post> posts_;
};

enum class CountSource { posts, comments };

// Dense per-day series over the history span; silent days are zeros.
struct DailyCountSeries {
  Day start_day;
  IntVector counts;
  CountSource source = CountSource::posts;

  int size() const { return static_cast<int>(counts.size()); }
  Day day_at(int i) const { return start_day + i; }
};

DailyCountSeries to_daily_counts(const EventHistory& history,
                                 CountSource source = CountSource::posts);

struct CandidateMoC {
  Day day;
  std::string method_id;
};

enum class MocLabel { Switch, Escalation, None };

struct GroundTruthAnnotation {
  std::string timeline_id;
  std::string annotator_id;
  std::string post_id;
  MocLabel label = MocLabel::None;
  std::vector<std::string> region_post_ids;
};

// Materialized timeline as stored on disk: span plus contained posts.
struct Timeline {
  std::string timeline_id;
  std::string user_id;
  Day start;
  Day end;
  std::vector<Post> posts;  // chronological
};

struct AnnotatedTimeline {
  std::string timeline_id;
  std::string user_id;
  Day start;
  Day end;
  std::vector<Post> posts;
  std::vector<Day> gtmoc_days;  // sorted, unique
};

// Union across annotators of the calendar days of every post labelled
// Switch/Escalation or covered by a labelled region. None contributes
// nothing. Annotations must reference the timeline and its posts.
AnnotatedTimeline aggregate_annotations(
    const Timeline& timeline,
    const std::vector<GroundTruthAnnotation>& annotations);

}  // namespace tlsel
