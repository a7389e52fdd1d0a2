#include "tlsel/synth.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tlsel/rng.hpp"

namespace tlsel {

using nlohmann::json;

namespace {

void validate(const ScenarioSpec& spec) {
  if (spec.segments.empty())
    throw std::invalid_argument("scenario needs at least one segment");
  for (const SegmentSpec& s : spec.segments) {
    if (s.duration_days < 1)
      throw std::invalid_argument("segment duration must be >= 1 day");
    if (!(s.rate >= 0) || !std::isfinite(s.rate))
      throw std::invalid_argument("segment rate must be finite and >= 0");
  }
  const AnnotationModel& m = spec.annotation_model;
  if (!(m.p_moc_near_cp >= 0 && m.p_moc_near_cp <= 1) ||
      !(m.p_moc_background >= 0 && m.p_moc_background <= 1))
    throw std::invalid_argument("annotation probabilities must lie in [0,1]");
  if (m.near_window_days < 0)
    throw std::invalid_argument("near_window_days must be >= 0");
  if (spec.users < 1) throw std::invalid_argument("users must be >= 1");
  if (spec.radius_days < 1)
    throw std::invalid_argument("radius_days must be >= 1");
}

double number_or(const json& j, const char* key, double dflt) {
  if (!j.contains(key)) return dflt;
  if (!j.at(key).is_number())
    throw std::invalid_argument(std::string("non-numeric \"") + key +
                                "\" in scenario");
  return j.at(key).get<double>();
}

}  // namespace

ScenarioSpec::ScenarioSpec() : start_day(*Day::parse("2015-01-01")) {}

ScenarioSpec ScenarioSpec::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("bad scenario JSON: ") + e.what());
  }
  ScenarioSpec spec;
  if (!j.contains("segments") || !j.at("segments").is_array())
    throw std::invalid_argument("scenario needs a \"segments\" array");
  for (const json& s : j.at("segments")) {
    SegmentSpec seg;
    seg.duration_days =
        static_cast<int>(number_or(s, "duration_days", 0));
    seg.rate = number_or(s, "rate", -1);
    spec.segments.push_back(seg);
  }
  if (j.contains("annotation_model")) {
    const json& m = j.at("annotation_model");
    spec.annotation_model.p_moc_near_cp =
        number_or(m, "p_moc_near_cp", spec.annotation_model.p_moc_near_cp);
    spec.annotation_model.near_window_days = static_cast<int>(number_or(
        m, "near_window_days", spec.annotation_model.near_window_days));
    spec.annotation_model.p_moc_background = number_or(
        m, "p_moc_background", spec.annotation_model.p_moc_background);
  }
  spec.seed = static_cast<std::uint64_t>(number_or(j, "seed", 0));
  spec.users = static_cast<int>(number_or(j, "users", 1));
  spec.radius_days = static_cast<int>(number_or(j, "radius_days", 7));
  if (j.contains("start_day")) {
    const auto d = Day::parse(j.at("start_day").get<std::string>());
    if (!d) throw std::invalid_argument("bad \"start_day\" in scenario");
    spec.start_day = *d;
  }
  validate(spec);
  return spec;
}

ScenarioSpec ScenarioSpec::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open scenario " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

GeneratedHistory generate_history(const ScenarioSpec& spec,
                                  const std::string& user_id,
                                  std::uint64_t seed) {
  validate(spec);
  Rng rng(seed);

  GeneratedHistory out;
  std::vector<Post> posts;
  int next_id = 0;
  int offset = 0;
  for (std::size_t si = 0; si < spec.segments.size(); ++si) {
    const SegmentSpec& seg = spec.segments[si];
    if (si > 0) out.planted_cp_days.push_back(spec.start_day + offset);
    for (int d = 0; d < seg.duration_days; ++d, ++offset) {
      const int count = seg.rate == 0 ? 0 : rng.poisson(seg.rate);
      for (int k = 0; k < count; ++k) {
        char idbuf[32];
        std::snprintf(idbuf, sizeof idbuf, "_p%06d", next_id++);
        Post p;
        p.post_id = user_id + idbuf;
        p.user_id = user_id;
        p.timestamp = noon_utc_seconds(spec.start_day + offset);
        posts.push_back(std::move(p));
      }
    }
  }
  if (posts.empty())
    throw std::invalid_argument("scenario produced no posts for user " +
                                user_id);
  out.history = EventHistory::from_posts(user_id, std::move(posts));
  return out;
}

SimulatedAnnotations simulate_annotations(
    const EventHistory& history, const std::vector<Day>& planted_cp_days,
    const AnnotationModel& model, const std::vector<Timeline>& timelines,
    std::uint64_t seed) {
  std::set<Day> posting_days;
  for (const Post& p : history.posts()) posting_days.insert(p.day());

  const auto near_cp = [&](Day d) {
    for (Day cp : planted_cp_days)
      if (std::abs(d - cp) <= model.near_window_days) return true;
    return false;
  };

  Rng rng(seed);
  std::set<Day> gtmoc_days;
  for (Day d : posting_days) {
    const double p = near_cp(d) ? model.p_moc_near_cp : model.p_moc_background;
    if (rng.uniform01() < p) gtmoc_days.insert(d);
  }

  SimulatedAnnotations out;
  for (const Timeline& t : timelines) {
    std::vector<GroundTruthAnnotation> rows;
    std::map<Day, const Post*> first_post_of_day;
    for (const Post& p : t.posts) first_post_of_day.emplace(p.day(), &p);
    for (const auto& [day, post] : first_post_of_day) {
      if (!gtmoc_days.count(day)) continue;
      GroundTruthAnnotation a;
      a.timeline_id = t.timeline_id;
      a.annotator_id = "synth";
      a.post_id = post->post_id;
      a.label = MocLabel::Switch;
      rows.push_back(std::move(a));
    }
    out.annotated.push_back(aggregate_annotations(t, rows));
    out.annotations.insert(out.annotations.end(), rows.begin(), rows.end());
  }
  return out;
}

}  // namespace tlsel
