#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tlsel/core_model.hpp"

namespace tlsel {

struct AnnotationModel {
  double p_moc_near_cp = 1.0;
  int near_window_days = 3;
  double p_moc_background = 0.0;
};

struct SegmentSpec {
  int duration_days = 1;
  double rate = 1.0;  // Poisson posts per day
};

struct ScenarioSpec {
  std::vector<SegmentSpec> segments;
  AnnotationModel annotation_model;
  std::uint64_t seed = 0;
  int users = 1;
  Day start_day;  // default 2015-01-01
  int radius_days = 7;

  ScenarioSpec();
  static ScenarioSpec from_json_text(const std::string& text);
  static ScenarioSpec from_json_file(const std::string& path);
};

struct GeneratedHistory {
  EventHistory history;
  std::vector<Day> planted_cp_days;  // segment boundaries
};

// Daily counts drawn Poisson(segment rate); posts stamped at noon UTC with
// sequential ids. Deterministic per (user_id, seed).
GeneratedHistory generate_history(const ScenarioSpec& spec,
                                  const std::string& user_id,
                                  std::uint64_t seed);

struct SimulatedAnnotations {
  std::vector<GroundTruthAnnotation> annotations;
  std::vector<AnnotatedTimeline> annotated;
};

// Marks each posting day a GTMoC with probability p_moc_near_cp when within
// near_window_days of a planted change point, else p_moc_background, then
// projects the marks onto each timeline as single-annotator switch labels.
SimulatedAnnotations simulate_annotations(const EventHistory& history,
                                          const std::vector<Day>& planted_cp_days,
                                          const AnnotationModel& model,
                                          const std::vector<Timeline>& timelines,
                                          std::uint64_t seed);

}  // namespace tlsel
