#pragma once

// Ingest: the Fama-French "49 Industry Portfolios [Daily]" parser, panel
// validation, and the monthly-stepped evaluation windows.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "corrnet/common.hpp"
#include "corrnet/dates.hpp"
#include "corrnet/matrix.hpp"
#include "corrnet/text.hpp"

namespace corrnet {

// The 49 industry short names in the order published by the French data
// library (value-weighted daily section).
inline const std::array<std::string, 49>& ff49_names() {
  static const std::array<std::string, 49> names = {
      "Agric", "Food",  "Soda",  "Beer",  "Smoke", "Toys",  "Fun",
      "Books", "Hshld", "Clths", "Hlth",  "MedEq", "Drugs", "Chems",
      "Rubbr", "Txtls", "BldMt", "Cnstr", "Steel", "FabPr", "Mach",
      "ElcEq", "Autos", "Aero",  "Ships", "Guns",  "Gold",  "Mines",
      "Coal",  "Oil",   "Util",  "Telcm", "PerSv", "BusSv", "Hardw",
      "Softw", "Chips", "LabEq", "Paper", "Boxes", "Trans", "Whlsl",
      "Rtail", "Meals", "Banks", "Insur", "RlEst", "Fin",   "Other"};
  return names;
}

// Dated matrix of daily returns in percent. Sentinel cells are stored as NaN
// and listed in `missing` so validation can surface them.
struct ReturnPanel {
  std::vector<Date> dates;
  std::vector<std::string> assets;
  Matrix returns;  // dates x assets
  std::vector<std::pair<std::size_t, std::size_t>> missing;

  std::size_t n_days() const { return dates.size(); }
  std::size_t n_assets() const { return assets.size(); }

  // First row whose date falls in month `ym` or later.
  std::size_t first_row_at_or_after(YearMonth ym) const {
    Date probe{ym.year, ym.month, 1};
    auto it = std::lower_bound(dates.begin(), dates.end(), probe);
    return static_cast<std::size_t>(it - dates.begin());
  }
};

struct WindowSlice {
  YearMonth label;         // window ends in this calendar month
  std::size_t row_begin;   // into ReturnPanel.dates
  std::size_t row_end;     // exclusive
  std::size_t n_obs;       // trading days in the window
};

namespace detail {

inline constexpr double kMissingSentinel = -99.99;
inline constexpr double kMissingSentinelAlt = -999.0;

inline bool is_missing_value(double v) {
  return v == kMissingSentinel || v == kMissingSentinelAlt;
}

struct RawLines {
  std::vector<std::string> lines;  // without trailing newline
};

inline RawLines read_lines(std::istream& in) {
  RawLines raw;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    raw.lines.push_back(line);
  }
  return raw;
}

// Parses the data block that starts right after `header_idx`. Rows run until
// a blank line or a line that does not begin with a digit (the next section
// title in the raw French file).
inline ReturnPanel parse_block(const RawLines& raw, std::size_t header_idx,
                               std::vector<std::string> assets) {
  const std::size_t n = assets.size();
  ReturnPanel panel;
  panel.assets = std::move(assets);

  std::vector<double> values;
  values.reserve(4096 * n);

  for (std::size_t li = header_idx + 1; li < raw.lines.size(); ++li) {
    std::string_view line = trim(raw.lines[li]);
    if (line.empty()) break;
    if (line.front() < '0' || line.front() > '9') break;

    const std::size_t line_no = li + 1;
    auto fields = split_fields(line);
    Date date;
    if (!try_parse_date(fields[0], date))
      throw ParseError("malformed date '" + fields[0] + "'", line_no);
    if (fields.size() != n + 1)
      throw FormatError("line " + std::to_string(line_no) + ": expected " +
                        std::to_string(n + 1) + " columns, got " +
                        std::to_string(fields.size()));
    if (!panel.dates.empty() && !(panel.dates.back() < date))
      throw FormatError("line " + std::to_string(line_no) +
                        ": dates not strictly increasing at " + date.iso());

    const std::size_t row = panel.dates.size();
    panel.dates.push_back(date);
    for (std::size_t c = 0; c < n; ++c) {
      double v;
      if (!try_parse_double(fields[c + 1], v))
        throw ParseError("bad value '" + fields[c + 1] + "' in column " +
                             std::to_string(c + 2),
                         line_no);
      if (is_missing_value(v)) {
        panel.missing.emplace_back(row, c);
        v = std::numeric_limits<double>::quiet_NaN();
      }
      values.push_back(v);
    }
  }

  if (panel.dates.empty()) throw FormatError("empty data section");

  panel.returns = Matrix(panel.dates.size(), n);
  panel.returns.data() = std::move(values);
  return panel;
}

// Header fields minus an optional leading date-column label.
inline std::vector<std::string> header_names(const std::string& line) {
  auto fields = split_fields(line);
  if (!fields.empty() &&
      (fields[0].empty() || fields[0] == "date" || fields[0] == "Date"))
    fields.erase(fields.begin());
  return fields;
}

}  // namespace detail

// True if the stream looks like a raw French-library file (as opposed to a
// plain panel CSV emitted by this toolkit).
inline bool has_ff49_section_header(const std::string& text) {
  return text.find("Average Value Weighted Returns") != std::string::npos;
}

// Parses the value-weighted daily section of the 49-industry file. Accepts
// either the raw library file (section located by its title line) or a bare
// header-plus-rows table; the 49 column names must match the published list.
inline ReturnPanel parse_ff49_daily(std::istream& in) {
  auto raw = detail::read_lines(in);

  std::size_t header_idx = raw.lines.size();
  for (std::size_t i = 0; i < raw.lines.size(); ++i) {
    const std::string& l = raw.lines[i];
    if (l.find("Average Value Weighted Returns") != std::string::npos &&
        l.find("Daily") != std::string::npos) {
      for (std::size_t j = i + 1; j < raw.lines.size(); ++j) {
        if (!trim(raw.lines[j]).empty()) {
          header_idx = j;
          break;
        }
      }
      break;
    }
  }
  if (header_idx == raw.lines.size()) {
    for (std::size_t j = 0; j < raw.lines.size(); ++j) {
      if (!trim(raw.lines[j]).empty()) {
        header_idx = j;
        break;
      }
    }
  }
  if (header_idx >= raw.lines.size())
    throw FormatError("no header row found");

  auto names = detail::header_names(raw.lines[header_idx]);
  if (names.size() != 49)
    throw FormatError("expected 49 industry columns, got " +
                      std::to_string(names.size()));
  const auto& canon = ff49_names();
  for (std::size_t i = 0; i < 49; ++i)
    if (names[i] != canon[i])
      throw FormatError("industry column " + std::to_string(i + 1) + " is '" +
                        names[i] + "', expected '" + canon[i] + "'");

  return detail::parse_block(raw, header_idx, std::move(names));
}

inline ReturnPanel parse_ff49_daily(const std::string& text) {
  std::istringstream in(text);
  return parse_ff49_daily(in);
}

// Generic panel reader: first non-blank line is the header (optional leading
// date-column label), any number of asset columns.
inline ReturnPanel read_panel_csv(std::istream& in) {
  auto raw = detail::read_lines(in);
  std::size_t header_idx = raw.lines.size();
  for (std::size_t j = 0; j < raw.lines.size(); ++j) {
    if (!trim(raw.lines[j]).empty()) {
      header_idx = j;
      break;
    }
  }
  if (header_idx >= raw.lines.size()) throw FormatError("no header row found");
  auto names = detail::header_names(raw.lines[header_idx]);
  if (names.empty()) throw FormatError("header row has no asset columns");
  return detail::parse_block(raw, header_idx, std::move(names));
}

inline ReturnPanel read_panel_csv(const std::string& text) {
  std::istringstream in(text);
  return read_panel_csv(in);
}

// Round-trip writer: ISO dates, short names as header, shortest round-trip
// number formatting. Flagged cells are written back as the -99.99 sentinel.
inline void write_panel_csv(const ReturnPanel& panel, std::ostream& out) {
  out << "date";
  for (const auto& a : panel.assets) out << ',' << a;
  out << '\n';
  for (std::size_t r = 0; r < panel.n_days(); ++r) {
    out << panel.dates[r].iso();
    const double* row = panel.returns.row(r);
    for (std::size_t c = 0; c < panel.n_assets(); ++c) {
      out << ',';
      if (std::isnan(row[c]))
        out << "-99.99";
      else
        out << fmt_double(row[c]);
    }
    out << '\n';
  }
}

struct ValidationReport {
  YearMonth start, end;
  std::size_t rows_in_range = 0;
  std::size_t missing_cells = 0;
  std::vector<std::pair<Date, std::string>> missing_sample;  // date, asset
  std::vector<std::pair<Date, Date>> gaps;                   // > 7 calendar days
  std::size_t outliers = 0;                                  // |return| > 100%
  std::vector<std::string> coverage_errors;

  bool pass() const { return missing_cells == 0 && coverage_errors.empty(); }

  void print(std::ostream& out) const {
    out << "validation " << start.str() << " .. " << end.str() << "\n"
        << "  rows in range:    " << rows_in_range << "\n"
        << "  missing cells:    " << missing_cells << "\n";
    for (std::size_t i = 0; i < missing_sample.size() && i < 5; ++i)
      out << "    " << missing_sample[i].first.iso() << " "
          << missing_sample[i].second << "\n";
    out << "  date gaps > 7d:   " << gaps.size() << "\n";
    for (std::size_t i = 0; i < gaps.size() && i < 5; ++i)
      out << "    " << gaps[i].first.iso() << " -> " << gaps[i].second.iso()
          << "\n";
    out << "  |return| > 100%:  " << outliers << "\n";
    for (const auto& e : coverage_errors) out << "  coverage: " << e << "\n";
    out << (pass() ? "  PASS\n" : "  FAIL\n");
  }
};

// Report-only scan of [start, end]: missing cells, calendar gaps over 7 days,
// out-of-range returns, and coverage shortfalls.
inline ValidationReport validate_panel(const ReturnPanel& panel,
                                       YearMonth start, YearMonth end) {
  ValidationReport rep;
  rep.start = start;
  rep.end = end;

  if (panel.dates.empty()) {
    rep.coverage_errors.push_back("panel is empty");
    return rep;
  }
  if (panel.dates.front().ym() > start)
    rep.coverage_errors.push_back("panel starts " +
                                  panel.dates.front().ym().str() +
                                  ", after requested start " + start.str());
  if (panel.dates.back().ym() < end)
    rep.coverage_errors.push_back("panel ends " + panel.dates.back().ym().str() +
                                  ", before requested end " + end.str());

  std::size_t lo = panel.first_row_at_or_after(start);
  std::size_t hi = panel.first_row_at_or_after(end.plus_months(1));
  rep.rows_in_range = hi - lo;

  for (const auto& [r, c] : panel.missing) {
    if (r >= lo && r < hi) {
      ++rep.missing_cells;
      if (rep.missing_sample.size() < 16)
        rep.missing_sample.emplace_back(panel.dates[r], panel.assets[c]);
    }
  }
  for (std::size_t r = lo + 1; r < hi; ++r) {
    if (day_number(panel.dates[r]) - day_number(panel.dates[r - 1]) > 7)
      rep.gaps.emplace_back(panel.dates[r - 1], panel.dates[r]);
  }
  for (std::size_t r = lo; r < hi; ++r) {
    const double* row = panel.returns.row(r);
    for (std::size_t c = 0; c < panel.n_assets(); ++c)
      if (!std::isnan(row[c]) && std::abs(row[c]) > 100.0) ++rep.outliers;
  }
  return rep;
}

// Explicit opt-in for incomplete datasets: flagged cells become 0.
inline void impute_zero(ReturnPanel& panel) {
  for (const auto& [r, c] : panel.missing) panel.returns(r, c) = 0.0;
  panel.missing.clear();
}

// One slice per calendar month in [first_label, last_label]; each slice spans
// the trading days of its `window_months`-month calendar window.
inline std::vector<WindowSlice> month_windows(const ReturnPanel& panel,
                                              int window_months,
                                              YearMonth first_label,
                                              YearMonth last_label) {
  if (window_months < 1) throw InputError("window_months must be >= 1");
  if (last_label < first_label)
    throw InputError("last label precedes first label");
  if (panel.dates.empty()) throw CoverageError("panel is empty");

  YearMonth need_from = first_label.plus_months(-(window_months - 1));
  if (panel.dates.front().ym() > need_from)
    throw CoverageError("insufficient history before first label: need data from " +
                        need_from.str() + ", panel starts " +
                        panel.dates.front().ym().str());
  if (panel.dates.back().ym() < last_label)
    throw CoverageError("panel ends " + panel.dates.back().ym().str() +
                        ", before last label " + last_label.str());

  std::vector<WindowSlice> slices;
  slices.reserve(static_cast<std::size_t>(
      months_between_inclusive(first_label, last_label)));
  for (YearMonth label = first_label; label <= last_label;
       label = label.plus_months(1)) {
    std::size_t lo =
        panel.first_row_at_or_after(label.plus_months(-(window_months - 1)));
    std::size_t hi = panel.first_row_at_or_after(label.plus_months(1));
    std::size_t n_obs = hi - lo;
    if (n_obs <= panel.n_assets())
      throw CoverageError("window " + label.str() + " has " +
                          std::to_string(n_obs) +
                          " trading days; need more than " +
                          std::to_string(panel.n_assets()) +
                          " for a full-rank correlation matrix");
    slices.push_back(WindowSlice{label, lo, hi, n_obs});
  }
  return slices;
}

}  // namespace corrnet
