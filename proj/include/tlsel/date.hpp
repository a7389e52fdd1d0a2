#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tlsel {

// Calendar day in UTC, stored as days since 1970-01-01.
class Day {
 public:
  Day() = default;
  explicit constexpr Day(int days_since_epoch) : v_(days_since_epoch) {}

  static Day of(int year, int month, int day);
  static std::optional<Day> parse(std::string_view ymd);  // "YYYY-MM-DD"
  static Day from_epoch_seconds(std::int64_t seconds);

  constexpr int since_epoch() const { return v_; }
  std::string str() const;  // "YYYY-MM-DD"

  friend constexpr auto operator<=>(Day, Day) = default;
  friend constexpr Day operator+(Day d, int n) { return Day(d.v_ + n); }
  friend constexpr Day operator-(Day d, int n) { return Day(d.v_ - n); }
  friend constexpr int operator-(Day a, Day b) { return a.v_ - b.v_; }
  Day& operator++() { ++v_; return *this; }

 private:
  int v_ = 0;
};

// Seconds since the Unix epoch for noon UTC of the given day.
std::int64_t noon_utc_seconds(Day d);

// RFC 3339 timestamp ("2020-05-01T12:30:00Z", fractional seconds and
// numeric offsets accepted) to epoch seconds. Empty optional on malformed
// input.
std::optional<std::int64_t> parse_rfc3339(std::string_view ts);

// Epoch seconds rendered as "YYYY-MM-DDTHH:MM:SSZ".
std::string format_rfc3339(std::int64_t seconds);

}  // namespace tlsel
