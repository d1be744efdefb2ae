#pragma once

// Minimal calendar types: a day-precision Date and a YearMonth used to label
// evaluation windows. No time zones, no clocks.

#include <compare>
#include <cstdio>
#include <string>

#include "corrnet/common.hpp"

namespace corrnet {

struct YearMonth {
  int year = 0;
  int month = 1;  // 1..12

  // Months since year 0, convenient for distance/shift arithmetic.
  constexpr int index() const { return year * 12 + (month - 1); }

  static constexpr YearMonth from_index(int idx) {
    int y = idx / 12, m = idx % 12;
    if (m < 0) {
      m += 12;
      --y;
    }
    return YearMonth{y, m + 1};
  }

  constexpr YearMonth plus_months(int k) const { return from_index(index() + k); }

  friend constexpr auto operator<=>(const YearMonth&, const YearMonth&) = default;

  std::string str() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
    return buf;
  }
};

// Number of labels in [first, last], inclusive.
constexpr int months_between_inclusive(YearMonth first, YearMonth last) {
  return last.index() - first.index() + 1;
}

constexpr bool is_leap_year(int y) {
  return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

constexpr int days_in_month(int y, int m) {
  constexpr int base[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m == 2 && is_leap_year(y)) return 29;
  return base[m - 1];
}

struct Date {
  int year = 0;
  int month = 1;
  int day = 1;

  constexpr YearMonth ym() const { return YearMonth{year, month}; }

  friend constexpr auto operator<=>(const Date&, const Date&) = default;

  std::string iso() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
    return buf;
  }
};

// Days since 1970-01-01 (proleptic Gregorian). Standard civil-days formula.
constexpr long days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  long era = (y >= 0 ? y : y - 399) / 400;
  unsigned yoe = static_cast<unsigned>(y - era * 400);
  unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long>(doe) - 719468;
}

constexpr long day_number(const Date& d) {
  return days_from_civil(d.year, d.month, d.day);
}

// 0 = Monday ... 6 = Sunday.
constexpr int weekday(const Date& d) {
  long n = day_number(d) + 3;  // 1970-01-01 was a Thursday
  return static_cast<int>(((n % 7) + 7) % 7);
}

constexpr bool is_weekday(const Date& d) { return weekday(d) < 5; }

constexpr Date next_day(Date d) {
  if (++d.day > days_in_month(d.year, d.month)) {
    d.day = 1;
    if (++d.month > 12) {
      d.month = 1;
      ++d.year;
    }
  }
  return d;
}

namespace detail {

inline bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace detail

inline bool try_parse_date(const std::string& token, Date& out) {
  int y, m, d;
  if (token.size() == 8 && detail::all_digits(token)) {
    y = std::stoi(token.substr(0, 4));
    m = std::stoi(token.substr(4, 2));
    d = std::stoi(token.substr(6, 2));
  } else if (token.size() == 10 && token[4] == '-' && token[7] == '-' &&
             detail::all_digits(token.substr(0, 4)) &&
             detail::all_digits(token.substr(5, 2)) &&
             detail::all_digits(token.substr(8, 2))) {
    y = std::stoi(token.substr(0, 4));
    m = std::stoi(token.substr(5, 2));
    d = std::stoi(token.substr(8, 2));
  } else {
    return false;
  }
  if (m < 1 || m > 12 || d < 1 || d > days_in_month(y, m)) return false;
  out = Date{y, m, d};
  return true;
}

// Accepts YYYY-MM or YYYYMM.
inline bool try_parse_month(const std::string& token, YearMonth& out) {
  int y, m;
  if (token.size() == 7 && token[4] == '-' &&
      detail::all_digits(token.substr(0, 4)) &&
      detail::all_digits(token.substr(5, 2))) {
    y = std::stoi(token.substr(0, 4));
    m = std::stoi(token.substr(5, 2));
  } else if (token.size() == 6 && detail::all_digits(token)) {
    y = std::stoi(token.substr(0, 4));
    m = std::stoi(token.substr(4, 2));
  } else {
    return false;
  }
  if (m < 1 || m > 12) return false;
  out = YearMonth{y, m};
  return true;
}

inline YearMonth parse_month(const std::string& token) {
  YearMonth ym;
  if (!try_parse_month(token, ym))
    throw InputError("bad month '" + token + "' (expected YYYY-MM)");
  return ym;
}

}  // namespace corrnet
