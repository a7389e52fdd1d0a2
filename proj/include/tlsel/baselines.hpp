#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tlsel/core_model.hpp"

namespace tlsel {

inline constexpr const char* kKeywordsMethodId = "keywords";
inline constexpr const char* kEveryDayMethodId = "every_day";
inline constexpr const char* kRandomMethodPrefix = "random";

// Lowercased, trimmed, de-duplicated phrases.
class Lexicon {
 public:
  // One phrase per line, UTF-8; '#' starts a comment line; blanks ignored.
  static Lexicon load(const std::string& path);
  static Lexicon from_phrases(std::vector<std::string> phrases);

  const std::vector<std::string>& phrases() const { return phrases_; }
  bool empty() const { return phrases_.empty(); }

 private:
  std::vector<std::string> phrases_;  // sorted unique
};

// Case-insensitive substring match of any phrase against post text; one
// CandidateMoC per matching calendar day. Posts without text are skipped.
std::vector<CandidateMoC> detect_keywords(const EventHistory& history,
                                          const Lexicon& lexicon);

// One day drawn uniformly over the history span; method_id "random#<seed>".
std::vector<CandidateMoC> detect_random_single_day(const EventHistory& history,
                                                   std::uint64_t seed);

std::vector<CandidateMoC> detect_every_day(const EventHistory& history);

}  // namespace tlsel
