#pragma once

#include <map>
#include <string>
#include <vector>

#include "tlsel/core_model.hpp"

namespace tlsel {

// One detector emission; how cmocs-JSONL rows look on disk.
struct CmocRecord {
  std::string user_id;
  Day day;
  std::string method_id;

  friend bool operator==(const CmocRecord&, const CmocRecord&) = default;
};

// posts-JSONL: {post_id, user_id, timestamp (RFC 3339), text?,
// comments_received?}. Groups by user and sorts. Malformed lines are
// collected and reported together with their line numbers; an empty file
// yields an empty map.
std::map<std::string, EventHistory> ingest_histories(const std::string& path);

void write_posts_jsonl(const std::string& path,
                       const std::vector<Post>& posts);

// timelines-JSONL: {timeline_id, user_id, post_ids, start, end}. Reading
// resolves post ids against the ingested histories.
void write_timelines_jsonl(const std::string& path,
                           const std::vector<Timeline>& timelines);
std::vector<Timeline> read_timelines_jsonl(
    const std::string& path,
    const std::map<std::string, EventHistory>& histories);

// annotations-JSONL: {timeline_id, annotator_id, post_id, label, region?}
// with label in {switch, escalation, none}.
void write_annotations_jsonl(
    const std::string& path,
    const std::vector<GroundTruthAnnotation>& annotations);
std::vector<GroundTruthAnnotation> read_annotations_jsonl(
    const std::string& path);

// cmocs-JSONL: {user_id, day (YYYY-MM-DD), method_id}.
void write_cmocs_jsonl(const std::string& path,
                       const std::vector<CmocRecord>& records,
                       bool append = false);
std::vector<CmocRecord> read_cmocs_jsonl(const std::string& path);

}  // namespace tlsel
