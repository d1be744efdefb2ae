#pragma once

// Synthetic return panels from a one-market + block-factor model. Used as a
// ground-truth oracle: the population correlation structure is known in
// closed form, so cluster recovery and spectral behavior can be tested.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "corrnet/common.hpp"
#include "corrnet/dates.hpp"
#include "corrnet/matrix.hpp"
#include "corrnet/panel.hpp"
#include "corrnet/rng.hpp"

namespace corrnet {

struct FactorBlock {
  std::vector<int> members;
  double loading = 0.0;  // gamma, shared by all members
};

struct FactorSpec {
  int n_assets = 0;
  int n_days = 0;
  std::vector<double> market_loading;  // beta, per asset
  std::vector<FactorBlock> blocks;     // partition of {0..n_assets-1}
  std::vector<double> idio_sigma;      // per asset, > 0
  std::uint64_t seed = 0;
  Date start_date{1990, 1, 1};
};

namespace detail {

inline void check_factor_spec(const FactorSpec& spec) {
  if (spec.n_assets < 1) throw InputError("factor spec: n_assets must be >= 1");
  if (spec.n_days < 2) throw InputError("factor spec: n_days must be >= 2");
  if (spec.market_loading.size() != static_cast<std::size_t>(spec.n_assets))
    throw InputError("factor spec: market_loading must have one entry per asset");
  if (spec.idio_sigma.size() != static_cast<std::size_t>(spec.n_assets))
    throw InputError("factor spec: idio_sigma must have one entry per asset");
  for (double s : spec.idio_sigma)
    if (!(s > 0.0)) throw InputError("factor spec: idio_sigma must be positive");
  std::vector<int> owner(spec.n_assets, -1);
  for (std::size_t b = 0; b < spec.blocks.size(); ++b)
    for (int m : spec.blocks[b].members) {
      if (m < 0 || m >= spec.n_assets)
        throw InputError("factor spec: block member out of range");
      if (owner[m] != -1)
        throw InputError("factor spec: asset " + std::to_string(m) +
                         " appears in two blocks");
      owner[m] = static_cast<int>(b);
    }
  for (int i = 0; i < spec.n_assets; ++i)
    if (owner[i] == -1)
      throw InputError("factor spec: asset " + std::to_string(i) +
                       " belongs to no block (blocks must partition the assets)");
}

inline std::vector<int> block_of(const FactorSpec& spec) {
  std::vector<int> owner(spec.n_assets, -1);
  for (std::size_t b = 0; b < spec.blocks.size(); ++b)
    for (int m : spec.blocks[b].members) owner[m] = static_cast<int>(b);
  return owner;
}

}  // namespace detail

inline std::vector<std::string> synth_asset_names(int n) {
  if (n == 49) {
    const auto& ff = ff49_names();
    return {ff.begin(), ff.end()};
  }
  int width = 2;
  for (int v = n - 1; v >= 100; v /= 10) ++width;
  std::vector<std::string> names;
  names.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::string digits = std::to_string(i);
    names.push_back("A" + std::string(width - digits.size(), '0') + digits);
  }
  return names;
}

// Closed-form population correlation of the model; sample estimates should
// match to O(1/sqrt(n_days)).
inline Matrix population_correlation(const FactorSpec& spec) {
  detail::check_factor_spec(spec);
  auto owner = detail::block_of(spec);
  const int n = spec.n_assets;
  Matrix c(n, n);
  std::vector<double> variance(n);
  for (int i = 0; i < n; ++i) {
    double beta = spec.market_loading[i];
    double gamma = spec.blocks[owner[i]].loading;
    double sigma = spec.idio_sigma[i];
    variance[i] = beta * beta + gamma * gamma + sigma * sigma;
  }
  for (int i = 0; i < n; ++i) {
    c(i, i) = 1.0;
    for (int j = i + 1; j < n; ++j) {
      double cov = spec.market_loading[i] * spec.market_loading[j];
      if (owner[i] == owner[j])
        cov += spec.blocks[owner[i]].loading * spec.blocks[owner[j]].loading;
      double v = cov / std::sqrt(variance[i] * variance[j]);
      c(i, j) = v;
      c(j, i) = v;
    }
  }
  return c;
}

// r_i(t) = beta_i F(t) + gamma_i B_{b(i)}(t) + sigma_i z_i(t), all factors
// standard normal. Per day the draw order is fixed (market, blocks in order,
// then per-asset noise) so output is a pure function of the seed. Dates walk
// successive weekdays from start_date.
inline ReturnPanel factor_returns(const FactorSpec& spec) {
  detail::check_factor_spec(spec);
  auto owner = detail::block_of(spec);
  const int n = spec.n_assets;

  ReturnPanel panel;
  panel.assets = synth_asset_names(n);
  panel.returns = Matrix(spec.n_days, n);
  panel.dates.reserve(spec.n_days);
  Date d = spec.start_date;
  while (!is_weekday(d)) d = next_day(d);
  for (int t = 0; t < spec.n_days; ++t) {
    panel.dates.push_back(d);
    do d = next_day(d);
    while (!is_weekday(d));
  }

  Rng rng(spec.seed);
  std::vector<double> block_factor(spec.blocks.size());
  for (int t = 0; t < spec.n_days; ++t) {
    double market = rng.normal();
    for (std::size_t b = 0; b < spec.blocks.size(); ++b)
      block_factor[b] = rng.normal();
    for (int i = 0; i < n; ++i) {
      double r = spec.market_loading[i] * market +
                 spec.blocks[owner[i]].loading * block_factor[owner[i]] +
                 spec.idio_sigma[i] * rng.normal();
      panel.returns(t, i) = r;
    }
  }
  return panel;
}

// JSON spec format: n_assets, n_days, seed required; market_loading and
// idio_sigma accept a scalar (broadcast) or a per-asset array; blocks is a
// list of {members, loading} and defaults to one zero-loading block holding
// every asset; start_date is ISO "YYYY-MM-DD".
inline FactorSpec parse_factor_spec(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("factor spec: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("factor spec: top level must be an object");

  FactorSpec spec;
  try {
    spec.n_assets = j.at("n_assets").get<int>();
    spec.n_days = j.at("n_days").get<int>();
    spec.seed = j.value("seed", std::uint64_t{0});

    auto per_asset = [&](const char* key, double fallback) {
      std::vector<double> out;
      if (!j.contains(key)) {
        out.assign(spec.n_assets, fallback);
      } else if (j[key].is_number()) {
        out.assign(spec.n_assets, j[key].get<double>());
      } else {
        out = j[key].get<std::vector<double>>();
      }
      return out;
    };
    spec.market_loading = per_asset("market_loading", 0.0);
    spec.idio_sigma = per_asset("idio_sigma", 1.0);

    if (j.contains("blocks")) {
      for (const auto& jb : j.at("blocks")) {
        FactorBlock block;
        block.members = jb.at("members").get<std::vector<int>>();
        block.loading = jb.value("loading", 0.0);
        spec.blocks.push_back(std::move(block));
      }
    } else {
      FactorBlock all;
      for (int i = 0; i < spec.n_assets; ++i) all.members.push_back(i);
      spec.blocks.push_back(std::move(all));
    }

    if (j.contains("start_date")) {
      auto text = j.at("start_date").get<std::string>();
      Date parsed{};
      if (!try_parse_date(text, parsed))
        throw FormatError("factor spec: bad start_date '" + text + "'");
      spec.start_date = parsed;
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("factor spec: ") + e.what());
  }

  detail::check_factor_spec(spec);
  return spec;
}

}  // namespace corrnet
