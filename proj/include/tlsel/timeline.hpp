#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tlsel/core_model.hpp"

namespace tlsel {

// A candidate timeline: symmetric context around one CandidateMoC.
struct TimelineSpan {
  std::string timeline_id;  // "<user_id>_<center date>"
  std::string user_id;
  Day center;
  int radius_days = 7;
  Day start;  // center - radius
  Day end;    // center + radius
  std::vector<Post> posts;  // history posts with day in [start, end]
};

Timeline to_record(const TimelineSpan& span);

// One span per CandidateMoC. Input days must be de-duplicated.
std::vector<TimelineSpan> build_timelines(
    const EventHistory& history, const std::vector<CandidateMoC>& cmocs,
    int radius_days = 7);

// Keeps timelines with min_posts <= |posts| <= max_posts (inclusive).
std::vector<TimelineSpan> filter_timelines(std::vector<TimelineSpan> timelines,
                                           int min_posts = 10,
                                           int max_posts = 150);

// Uniformly keeps one timeline per user; deterministic per seed. Users are
// processed in sorted id order, output follows that order.
std::vector<TimelineSpan> sample_one_per_user(
    const std::vector<TimelineSpan>& timelines, std::uint64_t seed);

}  // namespace tlsel
