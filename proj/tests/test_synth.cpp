#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "tlsel/rng.hpp"
#include "tlsel/synth.hpp"
#include "tlsel/timeline.hpp"

using namespace tlsel;
using namespace testutil;

TEST_CASE("scenario specs parse from json") {
  const ScenarioSpec spec = ScenarioSpec::from_json_text(R"({
    "segments": [
      {"duration_days": 30, "rate": 1.5},
      {"duration_days": 20, "rate": 9.0}
    ],
    "annotation_model": {"p_moc_near_cp": 0.8, "near_window_days": 2,
                         "p_moc_background": 0.05},
    "seed": 12,
    "users": 4,
    "start_day": "2018-06-01",
    "radius_days": 5
  })");

  REQUIRE(spec.segments.size() == 2);
  CHECK(spec.segments[0].duration_days == 30);
  CHECK(spec.segments[0].rate == 1.5);
  CHECK(spec.segments[1].rate == 9.0);
  CHECK(spec.annotation_model.p_moc_near_cp == 0.8);
  CHECK(spec.annotation_model.near_window_days == 2);
  CHECK(spec.annotation_model.p_moc_background == 0.05);
  CHECK(spec.seed == 12);
  CHECK(spec.users == 4);
  CHECK(spec.start_day == Day::of(2018, 6, 1));
  CHECK(spec.radius_days == 5);

  SUBCASE("defaults fill in missing fields") {
    const ScenarioSpec d = ScenarioSpec::from_json_text(
        R"({"segments": [{"duration_days": 10, "rate": 2}]})");
    CHECK(d.seed == 0);
    CHECK(d.users == 1);
    CHECK(d.start_day == Day::of(2015, 1, 1));
    CHECK(d.radius_days == 7);
    CHECK(d.annotation_model.p_moc_near_cp == 1.0);
    CHECK(d.annotation_model.p_moc_background == 0.0);
  }
  SUBCASE("malformed specs are rejected") {
    CHECK_THROWS_AS(ScenarioSpec::from_json_text("not json"),
                    std::invalid_argument);
    CHECK_THROWS_AS(ScenarioSpec::from_json_text(R"({"segments": []})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(ScenarioSpec::from_json_text(
                        R"({"segments": [{"duration_days": 0, "rate": 1}]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(ScenarioSpec::from_json_text(
                        R"({"segments": [{"duration_days": 5, "rate": -2}]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        ScenarioSpec::from_json_text(
            R"({"segments": [{"duration_days": 5, "rate": 1}], "start_day": "junk"})"),
        std::invalid_argument);
  }
}

namespace {

ScenarioSpec two_segment_spec() {
  ScenarioSpec spec;
  spec.segments = {{40, 3.0}, {40, 12.0}};
  return spec;
}

}  // namespace

TEST_CASE("generated histories are deterministic and well formed") {
  const ScenarioSpec spec = two_segment_spec();
  const GeneratedHistory a = generate_history(spec, "u1", 5);
  const GeneratedHistory b = generate_history(spec, "u1", 5);
  const GeneratedHistory c = generate_history(spec, "u1", 6);

  CHECK(a.history == b.history);
  CHECK(a.history.posts() != c.history.posts());

  REQUIRE(a.planted_cp_days.size() == 1);
  CHECK(a.planted_cp_days[0] == spec.start_day + 40);

  CHECK(a.history.first_day() >= spec.start_day);
  CHECK(a.history.last_day() <= spec.start_day + 79);
  std::set<std::string> ids;
  for (const Post& p : a.history.posts()) {
    ids.insert(p.post_id);
    CHECK(p.user_id == "u1");
    CHECK(!p.text.has_value());
  }
  CHECK(ids.size() == a.history.posts().size());
}

TEST_CASE("segment rates shape the generated counts") {
  ScenarioSpec spec;
  spec.segments = {{30, 0.0}, {30, 6.0}};
  const GeneratedHistory g = generate_history(spec, "u", 3);

  // nothing can be generated during the silent first segment
  CHECK(g.history.first_day() >= spec.start_day + 30);

  double second_total = 0;
  for (const Post& p : g.history.posts())
    if (p.day() >= spec.start_day + 30) second_total += 1;
  CHECK(second_total / 30.0 > 3.0);  // near rate 6, far from rate 0

  SUBCASE("a scenario that generates nothing is rejected") {
    ScenarioSpec empty;
    empty.segments = {{10, 0.0}};
    CHECK_THROWS_AS(generate_history(empty, "u", 1), std::invalid_argument);
  }
}

TEST_CASE("simulated annotations mark days near the planted change") {
  ScenarioSpec spec = two_segment_spec();
  spec.annotation_model.p_moc_near_cp = 1.0;
  spec.annotation_model.near_window_days = 3;
  spec.annotation_model.p_moc_background = 0.0;

  const GeneratedHistory g = generate_history(spec, "u", 9);
  const Day cp = g.planted_cp_days[0];

  std::vector<CandidateMoC> centers = {{cp, "planted"}};
  std::vector<Timeline> records;
  for (const TimelineSpan& s :
       build_timelines(g.history, centers, spec.radius_days))
    records.push_back(to_record(s));

  const SimulatedAnnotations sim = simulate_annotations(
      g.history, g.planted_cp_days, spec.annotation_model, records, 17);

  REQUIRE(sim.annotated.size() == 1);
  const AnnotatedTimeline& t = sim.annotated[0];
  REQUIRE(!t.gtmoc_days.empty());

  // with certainty near the change and zero background, ground truth is
  // exactly the posting days within the window, intersected with the span
  std::set<int> expected;
  for (const Post& p : g.history.posts()) {
    const Day d = p.day();
    if (std::abs(d - cp) <= 3 && d >= t.start && d <= t.end)
      expected.insert(d.since_epoch());
  }
  std::set<int> got;
  for (Day d : t.gtmoc_days) got.insert(d.since_epoch());
  CHECK(got == expected);

  for (const GroundTruthAnnotation& a : sim.annotations) {
    CHECK(a.annotator_id == "synth");
    CHECK(a.label == MocLabel::Switch);
    CHECK(a.timeline_id == records[0].timeline_id);
  }

  SUBCASE("simulation is deterministic per seed") {
    const SimulatedAnnotations again = simulate_annotations(
        g.history, g.planted_cp_days, spec.annotation_model, records, 17);
    CHECK(again.annotations.size() == sim.annotations.size());
    for (std::size_t i = 0; i < sim.annotations.size(); ++i)
      CHECK(again.annotations[i].post_id == sim.annotations[i].post_id);
  }
  SUBCASE("zero probabilities mean no annotations") {
    AnnotationModel silent;
    silent.p_moc_near_cp = 0.0;
    silent.p_moc_background = 0.0;
    const SimulatedAnnotations none = simulate_annotations(
        g.history, g.planted_cp_days, silent, records, 17);
    CHECK(none.annotations.empty());
    REQUIRE(none.annotated.size() == 1);
    CHECK(none.annotated[0].gtmoc_days.empty());
  }
  SUBCASE("background probability marks days far from the change") {
    AnnotationModel bg;
    bg.p_moc_near_cp = 0.0;
    bg.p_moc_background = 1.0;
    const SimulatedAnnotations all_bg = simulate_annotations(
        g.history, g.planted_cp_days, bg, records, 17);
    REQUIRE(all_bg.annotated.size() == 1);
    for (Day d : all_bg.annotated[0].gtmoc_days)
      CHECK(std::abs(d - cp) > 3);
  }
}
