#pragma once

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tlsel/types.hpp"

namespace tlsel::detail {

inline std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return in;
}

inline std::ofstream open_out(const std::string& path, bool append = false) {
  std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
  if (!out) throw DataError("cannot write " + path);
  return out;
}

// Applies fn to each non-empty line's parsed JSON object; collects
// per-line failures and reports them all at once.
template <typename Fn>
void for_each_record(std::ifstream& in, const std::string& path, Fn fn) {
  std::vector<std::string> problems;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (line.empty()) continue;
    try {
      const nlohmann::json j = nlohmann::json::parse(line);
      if (!j.is_object()) throw DataError("not a JSON object");
      fn(j, lineno);
    } catch (const std::exception& e) {
      problems.push_back("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!problems.empty()) {
    std::ostringstream msg;
    msg << path << ": " << problems.size() << " malformed record(s): ";
    for (std::size_t i = 0; i < problems.size(); ++i) {
      if (i) msg << "; ";
      msg << problems[i];
    }
    throw DataError(msg.str());
  }
}

inline std::string require_string(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string())
    throw DataError(std::string("missing or non-string \"") + key + "\"");
  return j.at(key).get<std::string>();
}

inline double require_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw DataError(std::string("missing or non-numeric \"") + key + "\"");
  return j.at(key).get<double>();
}

}  // namespace tlsel::detail
