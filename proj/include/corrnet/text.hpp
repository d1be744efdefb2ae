#pragma once

// Small text utilities shared by the parsers and CSV writers.

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "corrnet/common.hpp"

namespace corrnet {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

// Splits on commas when present, otherwise on runs of whitespace. The
// Fama-French library publishes both CSV and fixed-width text flavors.
inline std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  if (line.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (true) {
      std::size_t pos = line.find(',', start);
      if (pos == std::string_view::npos) {
        out.emplace_back(trim(line.substr(start)));
        break;
      }
      out.emplace_back(trim(line.substr(start, pos - start)));
      start = pos + 1;
    }
  } else {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
      if (j > i) out.emplace_back(line.substr(i, j - i));
      i = j;
    }
  }
  return out;
}

inline bool try_parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;  // from_chars rejects a leading plus
  auto r = std::from_chars(first, last, out);
  return r.ec == std::errc() && r.ptr == last;
}

// Shortest decimal representation that round-trips the double exactly.
inline std::string fmt_double(double x) {
  char buf[40];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

inline std::string fmt_fixed(double x, int precision) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, precision);
  return std::string(buf, r.ptr);
}

}  // namespace corrnet
