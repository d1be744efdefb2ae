#pragma once

// CSV writers for the result tables. All floating-point values go through
// fmt_double (shortest round-trip form) so outputs are byte-stable.

#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "corrnet/common.hpp"
#include "corrnet/correlation.hpp"
#include "corrnet/dates.hpp"
#include "corrnet/graph.hpp"
#include "corrnet/matrix.hpp"
#include "corrnet/text.hpp"

namespace corrnet {

inline void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("write failed: " + path.string());
}

// month,<value column> time series.
inline void write_series_csv(std::ostream& out, const std::string& value_name,
                             const std::vector<YearMonth>& labels,
                             const std::vector<double>& values) {
  if (labels.size() != values.size())
    throw InputError("write_series_csv: label/value length mismatch");
  out << "month," << value_name << "\n";
  for (std::size_t i = 0; i < labels.size(); ++i)
    out << labels[i].str() << ',' << fmt_double(values[i]) << "\n";
}

// month,<one column per name> table (degree, betweenness, eigenvector panels).
inline void write_month_table_csv(std::ostream& out,
                                  const std::vector<std::string>& columns,
                                  const std::vector<YearMonth>& labels,
                                  const Matrix& values) {
  if (values.rows() != labels.size() || values.cols() != columns.size())
    throw InputError("write_month_table_csv: shape mismatch");
  out << "month";
  for (const auto& c : columns) out << ',' << c;
  out << "\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out << labels[i].str();
    for (std::size_t j = 0; j < values.cols(); ++j)
      out << ',' << fmt_double(values(i, j));
    out << "\n";
  }
}

// Symmetric month x month matrix with month labels on both axes.
inline void write_month_matrix_csv(std::ostream& out, const MonthMatrix& m) {
  if (m.values.rows() != m.labels.size() || m.values.cols() != m.labels.size())
    throw InputError("write_month_matrix_csv: shape mismatch");
  out << "month";
  for (const auto& l : m.labels) out << ',' << l.str();
  out << "\n";
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    out << m.labels[i].str();
    for (std::size_t j = 0; j < m.values.cols(); ++j)
      out << ',' << fmt_double(m.values(i, j));
    out << "\n";
  }
}

// Full correlation matrix with asset labels on both axes.
inline void write_corr_csv(std::ostream& out, const Matrix& values,
                           const std::vector<std::string>& names) {
  if (values.rows() != names.size() || values.cols() != names.size())
    throw InputError("write_corr_csv: shape mismatch");
  out << "asset";
  for (const auto& n : names) out << ',' << n;
  out << "\n";
  for (std::size_t i = 0; i < names.size(); ++i) {
    out << names[i];
    for (std::size_t j = 0; j < values.cols(); ++j)
      out << ',' << fmt_double(values(i, j));
    out << "\n";
  }
}

// PMFG edge list in insertion (descending-weight) order.
inline void write_edges_csv(std::ostream& out, const Graph& g,
                            const std::vector<std::string>& names) {
  if (static_cast<int>(names.size()) != g.n)
    throw InputError("write_edges_csv: name count mismatch");
  out << "source,target,weight\n";
  for (const auto& e : g.edges)
    out << names[e.u] << ',' << names[e.v] << ',' << fmt_double(e.w) << "\n";
}

struct CommunityRow {
  std::string asset;
  int community = 0;
  int degree = 0;
};

inline void write_communities_csv(std::ostream& out,
                                  const std::vector<CommunityRow>& rows) {
  out << "asset,community,degree\n";
  for (const auto& r : rows)
    out << r.asset << ',' << r.community << ',' << r.degree << "\n";
}

}  // namespace corrnet
