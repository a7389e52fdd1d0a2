#include "tlsel/baselines.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <stdexcept>

#include "tlsel/rng.hpp"
#include "tlsel/types.hpp"

namespace tlsel {

namespace {

// ASCII-only lowercasing; multi-byte UTF-8 sequences pass through untouched.
std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Lexicon Lexicon::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::vector<std::string> phrases;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    phrases.push_back(t);
  }
  return from_phrases(std::move(phrases));
}

Lexicon Lexicon::from_phrases(std::vector<std::string> phrases) {
  Lexicon lex;
  for (std::string& p : phrases) {
    const std::string t = lower(trim(p));
    if (!t.empty()) lex.phrases_.push_back(t);
  }
  std::sort(lex.phrases_.begin(), lex.phrases_.end());
  lex.phrases_.erase(std::unique(lex.phrases_.begin(), lex.phrases_.end()),
                     lex.phrases_.end());
  return lex;
}

std::vector<CandidateMoC> detect_keywords(const EventHistory& history,
                                          const Lexicon& lexicon) {
  if (lexicon.empty()) throw std::invalid_argument("empty lexicon");
  std::set<Day> days;
  for (const Post& p : history.posts()) {
    if (!p.text) continue;
    const std::string text = lower(*p.text);
    for (const std::string& phrase : lexicon.phrases()) {
      if (text.find(phrase) != std::string::npos) {
        days.insert(p.day());
        break;
      }
    }
  }
  std::vector<CandidateMoC> out;
  out.reserve(days.size());
  for (Day d : days) out.push_back({d, kKeywordsMethodId});
  return out;
}

std::vector<CandidateMoC> detect_random_single_day(const EventHistory& history,
                                                   std::uint64_t seed) {
  Rng rng(mix_seed(seed, history.user_id()));
  const Day day = history.first_day() + rng.uniform_int(history.span_days());
  return {{day, std::string(kRandomMethodPrefix) + "#" + std::to_string(seed)}};
}

std::vector<CandidateMoC> detect_every_day(const EventHistory& history) {
  std::vector<CandidateMoC> out;
  out.reserve(static_cast<std::size_t>(history.span_days()));
  for (Day d = history.first_day(); d <= history.last_day(); ++d)
    out.push_back({d, kEveryDayMethodId});
  return out;
}

}  // namespace tlsel
