#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "tlsel/core_model.hpp"

namespace testutil {

using namespace tlsel;

inline Post make_post(const std::string& user, int n, Day d, int comments = 0,
                      std::optional<std::string> text = std::nullopt) {
  Post p;
  char buf[16];
  std::snprintf(buf, sizeof buf, "p%04d", n);
  p.post_id = user + "_" + buf;
  p.user_id = user;
  p.timestamp = noon_utc_seconds(d);
  p.text = std::move(text);
  p.comments_received = comments;
  return p;
}

// counts[i] posts on day start+i, comments spread one per post.
inline EventHistory history_from_counts(const std::string& user, Day start,
                                        const std::vector<int>& counts,
                                        int comments_each = 0) {
  std::vector<Post> posts;
  int n = 0;
  for (std::size_t i = 0; i < counts.size(); ++i)
    for (int k = 0; k < counts[i]; ++k)
      posts.push_back(make_post(user, n++, start + static_cast<int>(i),
                                comments_each));
  return EventHistory::from_posts(user, std::move(posts));
}

inline std::string tmp_path(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "tlsel_tests";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::string s((std::istreambuf_iterator<char>(in)),
                std::istreambuf_iterator<char>());
  return s;
}

inline std::vector<Day> days(std::initializer_list<int> v) {
  std::vector<Day> out;
  for (int d : v) out.push_back(Day(d));
  return out;
}

}  // namespace testutil
