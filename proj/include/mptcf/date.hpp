#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include "mptcf/errors.hpp"

namespace mptcf {

/// Calendar date, stored as days since 1970-01-01. Parsed/printed as ISO-8601.
struct Date {
  int serial = 0;

  static std::optional<Date> try_parse(std::string_view iso);

  /// Throws InvalidInput on malformed or impossible dates.
  static Date parse(std::string_view iso);

  std::string to_string() const;

  Date plus_days(int days) const { return Date{serial + days}; }

  auto operator<=>(const Date&) const = default;
};

/// Inclusive date interval.
struct DateRange {
  Date from;
  Date to;

  DateRange() = default;
  DateRange(Date f, Date t) : from(f), to(t) {
    if (to < from)
      throw InvalidInput("date range not well-ordered: " + f.to_string() + " > " + t.to_string());
  }

  bool contains(Date d) const { return from <= d && d <= to; }

  /// Trailing window of `days` calendar days ending at `end` (inclusive).
  static DateRange trailing(Date end, int days) {
    if (days < 1) throw InvalidInput("trailing window must cover at least one day");
    return DateRange(end.plus_days(-(days - 1)), end);
  }
};

}  // namespace mptcf
