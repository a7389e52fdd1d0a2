#include "tlsel/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <unordered_map>

#include "jsonl_util.hpp"

namespace tlsel {

using nlohmann::json;
using detail::for_each_record;
using detail::open_in;
using detail::open_out;
using detail::require_string;

namespace {

Day require_day(const json& j, const char* key) {
  const std::optional<Day> d = Day::parse(require_string(j, key));
  if (!d) throw DataError(std::string("invalid date in \"") + key + "\"");
  return *d;
}

MocLabel parse_label(const std::string& s) {
  if (s == "switch") return MocLabel::Switch;
  if (s == "escalation") return MocLabel::Escalation;
  if (s == "none") return MocLabel::None;
  throw DataError("unknown label \"" + s + "\"");
}

const char* label_str(MocLabel l) {
  switch (l) {
    case MocLabel::Switch: return "switch";
    case MocLabel::Escalation: return "escalation";
    default: return "none";
  }
}

json post_to_json(const Post& p) {
  json j;
  j["post_id"] = p.post_id;
  j["user_id"] = p.user_id;
  j["timestamp"] = format_rfc3339(p.timestamp);
  if (p.text) j["text"] = *p.text;
  j["comments_received"] = p.comments_received;
  return j;
}

}  // namespace

std::map<std::string, EventHistory> ingest_histories(const std::string& path) {
  std::ifstream in = open_in(path);
  std::map<std::string, std::vector<Post>> grouped;
  for_each_record(in, path, [&](const json& j, int) {
    Post p;
    p.post_id = require_string(j, "post_id");
    p.user_id = require_string(j, "user_id");
    const std::optional<std::int64_t> ts =
        parse_rfc3339(require_string(j, "timestamp"));
    if (!ts) throw DataError("unparseable timestamp");
    p.timestamp = *ts;
    if (j.contains("text")) {
      if (!j.at("text").is_string()) throw DataError("non-string \"text\"");
      p.text = j.at("text").get<std::string>();
    }
    if (j.contains("comments_received")) {
      if (!j.at("comments_received").is_number_integer())
        throw DataError("non-integer \"comments_received\"");
      p.comments_received = j.at("comments_received").get<int>();
      if (p.comments_received < 0)
        throw DataError("negative \"comments_received\"");
    }
    grouped[p.user_id].push_back(std::move(p));
  });

  std::map<std::string, EventHistory> out;
  for (auto& [user, posts] : grouped) {
    try {
      out.emplace(user, EventHistory::from_posts(user, std::move(posts)));
    } catch (const std::invalid_argument& e) {
      throw DataError(path + ": " + e.what());
    }
  }
  return out;
}

void write_posts_jsonl(const std::string& path,
                       const std::vector<Post>& posts) {
  std::ofstream out = open_out(path);
  for (const Post& p : posts) out << post_to_json(p).dump() << '\n';
}

void write_timelines_jsonl(const std::string& path,
                           const std::vector<Timeline>& timelines) {
  std::ofstream out = open_out(path);
  for (const Timeline& t : timelines) {
    json j;
    j["timeline_id"] = t.timeline_id;
    j["user_id"] = t.user_id;
    j["start"] = t.start.str();
    j["end"] = t.end.str();
    json ids = json::array();
    for (const Post& p : t.posts) ids.push_back(p.post_id);
    j["post_ids"] = std::move(ids);
    out << j.dump() << '\n';
  }
}

std::vector<Timeline> read_timelines_jsonl(
    const std::string& path,
    const std::map<std::string, EventHistory>& histories) {
  std::ifstream in = open_in(path);
  std::vector<Timeline> out;
  for_each_record(in, path, [&](const json& j, int) {
    Timeline t;
    t.timeline_id = require_string(j, "timeline_id");
    t.user_id = require_string(j, "user_id");
    t.start = require_day(j, "start");
    t.end = require_day(j, "end");
    if (t.end < t.start) throw DataError("end before start");
    auto hit = histories.find(t.user_id);
    if (hit == histories.end())
      throw DataError("unknown user_id \"" + t.user_id + "\"");
    std::unordered_map<std::string, const Post*> by_id;
    for (const Post& p : hit->second.posts()) by_id.emplace(p.post_id, &p);
    if (!j.contains("post_ids") || !j.at("post_ids").is_array())
      throw DataError("missing \"post_ids\" array");
    for (const json& id : j.at("post_ids")) {
      if (!id.is_string()) throw DataError("non-string post id");
      auto pit = by_id.find(id.get<std::string>());
      if (pit == by_id.end())
        throw DataError("unknown post_id \"" + id.get<std::string>() + "\"");
      t.posts.push_back(*pit->second);
    }
    std::stable_sort(t.posts.begin(), t.posts.end(),
                     [](const Post& a, const Post& b) {
                       return a.timestamp < b.timestamp;
                     });
    out.push_back(std::move(t));
  });
  return out;
}

void write_annotations_jsonl(
    const std::string& path,
    const std::vector<GroundTruthAnnotation>& annotations) {
  std::ofstream out = open_out(path);
  for (const GroundTruthAnnotation& a : annotations) {
    json j;
    j["timeline_id"] = a.timeline_id;
    j["annotator_id"] = a.annotator_id;
    j["post_id"] = a.post_id;
    j["label"] = label_str(a.label);
    if (!a.region_post_ids.empty()) j["region"] = a.region_post_ids;
    out << j.dump() << '\n';
  }
}

std::vector<GroundTruthAnnotation> read_annotations_jsonl(
    const std::string& path) {
  std::ifstream in = open_in(path);
  std::vector<GroundTruthAnnotation> out;
  for_each_record(in, path, [&](const json& j, int) {
    GroundTruthAnnotation a;
    a.timeline_id = require_string(j, "timeline_id");
    a.annotator_id = require_string(j, "annotator_id");
    a.post_id = require_string(j, "post_id");
    a.label = parse_label(require_string(j, "label"));
    if (j.contains("region")) {
      if (!j.at("region").is_array()) throw DataError("non-array \"region\"");
      for (const json& id : j.at("region")) {
        if (!id.is_string()) throw DataError("non-string region post id");
        a.region_post_ids.push_back(id.get<std::string>());
      }
    }
    out.push_back(std::move(a));
  });
  return out;
}

void write_cmocs_jsonl(const std::string& path,
                       const std::vector<CmocRecord>& records, bool append) {
  std::ofstream out = open_out(path, append);
  for (const CmocRecord& r : records) {
    json j;
    j["user_id"] = r.user_id;
    j["day"] = r.day.str();
    j["method_id"] = r.method_id;
    out << j.dump() << '\n';
  }
}

std::vector<CmocRecord> read_cmocs_jsonl(const std::string& path) {
  std::ifstream in = open_in(path);
  std::vector<CmocRecord> out;
  for_each_record(in, path, [&](const json& j, int) {
    CmocRecord r;
    r.user_id = require_string(j, "user_id");
    r.day = require_day(j, "day");
    r.method_id = require_string(j, "method_id");
    out.push_back(std::move(r));
  });
  return out;
}

}  // namespace tlsel
