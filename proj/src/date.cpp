#include "mptcf/date.hpp"

#include <cctype>
#include <cstdio>

namespace mptcf {

namespace {

bool all_digits(std::string_view s) {
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return !s.empty();
}

}  // namespace

std::optional<Date> Date::try_parse(std::string_view iso) {
  // Strict YYYY-MM-DD.
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') return std::nullopt;
  const auto ys = iso.substr(0, 4), ms = iso.substr(5, 2), ds = iso.substr(8, 2);
  if (!all_digits(ys) || !all_digits(ms) || !all_digits(ds)) return std::nullopt;
  const int y = std::stoi(std::string(ys));
  const unsigned m = static_cast<unsigned>(std::stoi(std::string(ms)));
  const unsigned d = static_cast<unsigned>(std::stoi(std::string(ds)));
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                        std::chrono::day{d}};
  if (!ymd.ok()) return std::nullopt;
  const std::chrono::sys_days sd{ymd};
  return Date{static_cast<int>(sd.time_since_epoch().count())};
}

Date Date::parse(std::string_view iso) {
  auto d = try_parse(iso);
  if (!d) throw InvalidInput("invalid ISO-8601 date: '" + std::string(iso) + "'");
  return *d;
}

std::string Date::to_string() const {
  const std::chrono::sys_days sd{std::chrono::days{serial}};
  const std::chrono::year_month_day ymd{sd};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

}  // namespace mptcf
