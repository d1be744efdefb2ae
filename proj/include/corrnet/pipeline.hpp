#pragma once

// End-to-end orchestration: ingest -> windows -> per-month correlation /
// PMFG / metrics -> month-by-month comparisons -> spectra -> CSV + SVG
// output tree with a manifest. The manifest is written last and marks a
// complete run; a directory without one is incomplete.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "corrnet/common.hpp"
#include "corrnet/correlation.hpp"
#include "corrnet/csv.hpp"
#include "corrnet/dates.hpp"
#include "corrnet/graph.hpp"
#include "corrnet/infomap.hpp"
#include "corrnet/netmetrics.hpp"
#include "corrnet/panel.hpp"
#include "corrnet/parallel.hpp"
#include "corrnet/pmfg.hpp"
#include "corrnet/spectral.hpp"
#include "corrnet/svg.hpp"
#include "corrnet/text.hpp"

namespace corrnet {

struct PipelineConfig {
  std::string input_path;
  std::string output_dir;
  int window_months = 3;
  YearMonth first_label{1969, 9};
  YearMonth last_label{2011, 12};
  int restarts = 100;
  std::uint64_t seed = 0;
  bool weighted = false;     // use edge weights in the map-equation flows
  bool bits = false;         // link MI in bits instead of nats
  bool impute_zero = false;  // replace missing cells with 0 before anything else
  double white_above_link_mi = 0.1;
  double white_above_degree = 30.0;
  double white_above_betweenness = 200.0;
};

struct PipelineResult {
  std::vector<std::string> assets;
  std::vector<YearMonth> labels;
  std::vector<CorrelationMatrix> corr;
  std::vector<Pmfg> pmfgs;
  std::vector<double> avg_corr;
  Matrix degree;       // months x assets
  Matrix betweenness;  // months x assets
  MonthMatrix link_mi;
  MonthMatrix spearman;
  EigenSeries eigen;
  CorrelationMatrix full_corr;
  Pmfg full_pmfg;
  Partition full_partition;
  std::string data_hash;
  std::size_t input_bytes = 0;
};

inline std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xF];
    h >>= 4;
  }
  return out;
}

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Year label at every January; falls back to first/last for short spans.
inline std::vector<std::pair<std::size_t, std::string>> january_ticks(
    const std::vector<YearMonth>& labels) {
  std::vector<std::pair<std::size_t, std::string>> ticks;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i].month == 1) ticks.emplace_back(i, std::to_string(labels[i].year));
  if (ticks.empty()) {
    ticks.emplace_back(0, labels.front().str());
    if (labels.size() > 1) ticks.emplace_back(labels.size() - 1, labels.back().str());
  }
  return ticks;
}

inline std::vector<std::string> month_strings(const std::vector<YearMonth>& labels) {
  std::vector<std::string> out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(l.str());
  return out;
}

inline Matrix transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

// Display order for the community table: communities by size (largest
// first, ties by smallest member index), members by degree (highest first,
// ties by index). Community ids are renumbered 1..k in that order.
inline std::vector<CommunityRow> community_rows(const Pmfg& g,
                                                const Partition& part,
                                                const std::vector<std::string>& names) {
  auto deg = degrees(g);
  std::vector<std::vector<int>> groups(part.n_communities);
  for (int i = 0; i < g.n; ++i) groups[part.assignment[i]].push_back(i);

  std::vector<std::size_t> order(groups.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (groups[a].size() != groups[b].size()) return groups[a].size() > groups[b].size();
    return groups[a].front() < groups[b].front();
  });

  std::vector<CommunityRow> rows;
  rows.reserve(g.n);
  int display_id = 0;
  for (std::size_t gi : order) {
    ++display_id;
    auto members = groups[gi];
    std::sort(members.begin(), members.end(), [&](int a, int b) {
      if (deg[a] != deg[b]) return deg[a] > deg[b];
      return a < b;
    });
    for (int m : members) rows.push_back({names[m], display_id, deg[m]});
  }
  return rows;
}

}  // namespace detail

// Accepts either the original FF-49 daily file or the plain CSV schema that
// write_panel_csv emits (and synth produces); format is auto-detected.
inline ReturnPanel load_panel_file(const std::string& path, std::string* raw_out = nullptr) {
  std::string raw = detail::read_file(path);
  if (raw_out) *raw_out = raw;
  if (has_ff49_section_header(raw)) return parse_ff49_daily(raw);
  return read_panel_csv(raw);
}

inline PipelineResult run_pipeline(const PipelineConfig& cfg) {
  if (cfg.window_months < 1) throw InputError("window_months must be >= 1");
  if (cfg.last_label < cfg.first_label)
    throw InputError("first_label must not exceed last_label");
  if (cfg.restarts < 1) throw InputError("restarts must be >= 1");

  PipelineResult res;
  std::string raw;
  ReturnPanel panel = load_panel_file(cfg.input_path, &raw);
  res.data_hash = fnv1a64_hex(raw);
  res.input_bytes = raw.size();
  raw.clear();
  raw.shrink_to_fit();

  if (panel.n_assets() < 3)
    throw InputError("pipeline requires at least 3 assets");

  if (cfg.impute_zero) impute_zero(panel);
  YearMonth coverage_start = cfg.first_label.plus_months(-(cfg.window_months - 1));
  ValidationReport report = validate_panel(panel, coverage_start, cfg.last_label);
  if (!report.pass()) {
    std::ostringstream ss;
    report.print(ss);
    throw ValidationError("input failed validation:\n" + ss.str());
  }

  auto windows = month_windows(panel, cfg.window_months, cfg.first_label, cfg.last_label);
  const std::size_t M = windows.size();
  const std::size_t n = panel.n_assets();
  res.assets = panel.assets;

  res.labels.reserve(M);
  for (const auto& w : windows) res.labels.push_back(w.label);

  res.corr.resize(M);
  res.pmfgs.resize(M);
  res.avg_corr.resize(M);
  res.degree = Matrix(M, n);
  res.betweenness = Matrix(M, n);
  parallel_for(M, [&](std::size_t m) {
    res.corr[m] = pearson_matrix(windows[m], panel);
    res.avg_corr[m] = average_offdiag(res.corr[m]);
    res.pmfgs[m] = build_pmfg(res.corr[m]);
    auto deg = degrees(res.pmfgs[m]);
    auto btw = betweenness(res.pmfgs[m]);
    for (std::size_t i = 0; i < n; ++i) {
      res.degree(m, i) = deg[i];
      res.betweenness(m, i) = btw[i];
    }
  });

  // Full-sample network: one window spanning every day the monthly windows use.
  {
    WindowSlice full;
    full.label = cfg.last_label;
    full.row_begin = windows.front().row_begin;
    full.row_end = windows.back().row_end;
    full.n_obs = full.row_end - full.row_begin;
    res.full_corr = pearson_matrix(full, panel);
    res.full_pmfg = build_pmfg(res.full_corr);
    res.full_partition =
        infomap(res.full_pmfg, cfg.restarts, cfg.seed, cfg.weighted);
  }

  res.link_mi = mi_month_matrix(res.pmfgs, cfg.bits);
  res.spearman = spearman_month_matrix(res.corr);

  std::size_t ref = 0;
  for (std::size_t i = 0; i < res.assets.size(); ++i)
    if (res.assets[i] == "BusSv") {
      ref = i;
      break;
    }
  res.eigen = eigen_series(res.corr, ref, std::min<std::size_t>(3, n));

  return res;
}

inline void write_outputs(const PipelineConfig& cfg, const PipelineResult& res) {
  namespace fs = std::filesystem;
  const fs::path out(cfg.output_dir);
  fs::create_directories(out / "corr");
  fs::create_directories(out / "pmfg");
  fs::create_directories(out / "communities");

  std::vector<std::string> written;
  auto emit = [&](const fs::path& rel, const std::string& content) {
    write_file(out / rel, content);
    written.push_back(rel.generic_string());
  };

  {
    std::ostringstream ss;
    write_series_csv(ss, "avg_corr", res.labels, res.avg_corr);
    emit("avg_corr.csv", ss.str());
  }

  for (std::size_t m = 0; m < res.labels.size(); ++m) {
    {
      std::ostringstream ss;
      write_corr_csv(ss, res.corr[m].values, res.assets);
      emit(fs::path("corr") / (res.labels[m].str() + ".csv"), ss.str());
    }
    {
      std::ostringstream ss;
      write_edges_csv(ss, res.pmfgs[m], res.assets);
      emit(fs::path("pmfg") / (res.labels[m].str() + ".csv"), ss.str());
    }
  }
  {
    std::ostringstream ss;
    write_corr_csv(ss, res.full_corr.values, res.assets);
    emit(fs::path("corr") / "full.csv", ss.str());
  }
  {
    std::ostringstream ss;
    write_edges_csv(ss, res.full_pmfg, res.assets);
    emit(fs::path("pmfg") / "full.csv", ss.str());
  }
  {
    std::ostringstream ss;
    write_communities_csv(
        ss, detail::community_rows(res.full_pmfg, res.full_partition, res.assets));
    emit(fs::path("communities") / "full.csv", ss.str());
  }

  {
    std::ostringstream ss;
    write_month_table_csv(ss, res.assets, res.labels, res.degree);
    emit("degree.csv", ss.str());
  }
  {
    std::ostringstream ss;
    write_month_table_csv(ss, res.assets, res.labels, res.betweenness);
    emit("betweenness.csv", ss.str());
  }
  {
    std::ostringstream ss;
    write_month_matrix_csv(ss, res.link_mi);
    emit("link_mi.csv", ss.str());
  }
  {
    std::ostringstream ss;
    write_month_matrix_csv(ss, res.spearman);
    emit("spearman.csv", ss.str());
  }

  {
    const std::size_t k = res.eigen.top_k;
    std::vector<std::string> cols;
    for (std::size_t j = 1; j <= k; ++j) cols.push_back("lambda" + std::to_string(j));
    for (std::size_t j = 1; j <= k; ++j) cols.push_back("explained" + std::to_string(j));
    Matrix table(res.labels.size(), 2 * k);
    for (std::size_t m = 0; m < res.labels.size(); ++m)
      for (std::size_t j = 0; j < k; ++j) {
        table(m, j) = res.eigen.eigenvalues(m, j);
        table(m, k + j) = res.eigen.explained(m, j);
      }
    std::ostringstream ss;
    write_month_table_csv(ss, cols, res.labels, table);
    emit("eigenvalues.csv", ss.str());
  }
  {
    std::ostringstream ss;
    write_month_table_csv(ss, res.assets, res.labels, res.eigen.v1);
    emit("eigvec1.csv", ss.str());
  }
  {
    std::ostringstream ss;
    write_month_table_csv(ss, res.assets, res.labels, res.eigen.v2);
    emit("eigvec2.csv", ss.str());
  }

  // Heatmaps. Month-by-month panels are transposed so time runs left to
  // right; month-by-month matrices carry year ticks on both axes.
  const auto month_labels = detail::month_strings(res.labels);
  const auto year_ticks = detail::january_ticks(res.labels);
  auto asset_ticks = [&] {
    std::vector<std::pair<std::size_t, std::string>> t;
    for (std::size_t i = 0; i < res.assets.size(); ++i) t.emplace_back(i, res.assets[i]);
    return t;
  }();

  auto panel_svg = [&](const Matrix& values, std::optional<double> cap,
                       const std::string& title) {
    HeatmapOptions o;
    o.white_above = cap;
    o.title = title;
    o.row_ticks = asset_ticks;
    o.col_ticks = year_ticks;
    return render_heatmap(detail::transpose(values), res.assets, month_labels, o);
  };
  emit("degree.svg", panel_svg(res.degree, cfg.white_above_degree, "PMFG degree"));
  emit("betweenness.svg",
       panel_svg(res.betweenness, cfg.white_above_betweenness, "PMFG betweenness"));
  emit("eigvec1.svg", panel_svg(res.eigen.v1, std::nullopt, "First eigenvector"));
  emit("eigvec2.svg", panel_svg(res.eigen.v2, std::nullopt, "Second eigenvector"));

  auto month_svg = [&](const MonthMatrix& m, std::optional<double> cap,
                       const std::string& title) {
    HeatmapOptions o;
    o.white_above = cap;
    o.title = title;
    o.row_ticks = year_ticks;
    o.col_ticks = year_ticks;
    return render_heatmap(m.values, month_labels, month_labels, o);
  };
  emit("link_mi.svg",
       month_svg(res.link_mi, cfg.white_above_link_mi, "PMFG link mutual information"));
  emit("spearman.svg",
       month_svg(res.spearman, std::nullopt, "Spearman correlation of monthly matrices"));

  nlohmann::json manifest;
  manifest["tool"] = {{"name", "corrnet"}, {"version", kVersion}};
  manifest["config"] = {
      {"input_path", cfg.input_path},
      {"output_dir", cfg.output_dir},
      {"window_months", cfg.window_months},
      {"first_label", cfg.first_label.str()},
      {"last_label", cfg.last_label.str()},
      {"restarts", cfg.restarts},
      {"seed", cfg.seed},
      {"weighted", cfg.weighted},
      {"bits", cfg.bits},
      {"impute", cfg.impute_zero ? "zero" : "none"},
      {"white_above",
       {{"link_mi", cfg.white_above_link_mi},
        {"degree", cfg.white_above_degree},
        {"betweenness", cfg.white_above_betweenness}}}};
  manifest["input"] = {{"bytes", res.input_bytes},
                       {"fnv1a64", res.data_hash},
                       {"n_assets", res.assets.size()}};
  manifest["palette"] = {{"ramp", "blue-green-red linear"},
                         {"white_above",
                          {{"link_mi", cfg.white_above_link_mi},
                           {"degree", cfg.white_above_degree},
                           {"betweenness", cfg.white_above_betweenness}}}};
  manifest["results"] = {{"n_months", res.labels.size()},
                         {"first_month", res.labels.front().str()},
                         {"last_month", res.labels.back().str()},
                         {"communities", res.full_partition.n_communities},
                         {"codelength_bits", res.full_partition.codelength}};
  std::sort(written.begin(), written.end());
  manifest["outputs"] = written;
  write_file(out / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace corrnet
