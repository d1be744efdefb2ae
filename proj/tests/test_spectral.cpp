#include <doctest.h>

#include <cmath>
#include <vector>

#include "corrnet/correlation.hpp"
#include "corrnet/rng.hpp"
#include "corrnet/spectral.hpp"
#include "corrnet/synth.hpp"

using namespace corrnet;

namespace {

Matrix random_symmetric(std::size_t n, Rng& rng) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double v = 2.0 * rng.uniform01() - 1.0;
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

double reconstruction_error(const Matrix& c, const EigenSystem& es) {
  const std::size_t n = c.rows();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        sum += es.eigenvalues[k] * es.eigenvectors(i, k) * es.eigenvectors(j, k);
      worst = std::max(worst, std::abs(c(i, j) - sum));
    }
  return worst;
}

}  // namespace

TEST_CASE("2x2 correlation matrix in closed form") {
  Matrix c(2, 2, 1.0);
  c(0, 1) = c(1, 0) = 0.6;
  auto es = sym_eigen(c);
  CHECK(es.eigenvalues[0] == doctest::Approx(1.6).epsilon(1e-12));
  CHECK(es.eigenvalues[1] == doctest::Approx(0.4).epsilon(1e-12));
  double s = 1.0 / std::sqrt(2.0);
  orient(es, 0);
  CHECK(std::abs(es.eigenvectors(0, 0)) == doctest::Approx(s).epsilon(1e-12));
  CHECK(es.eigenvectors(0, 0) > 0.0);
  CHECK(es.eigenvectors(1, 0) == doctest::Approx(es.eigenvectors(0, 0)).epsilon(1e-12));
  CHECK(es.eigenvectors(0, 1) * es.eigenvectors(1, 1) < 0.0);
}

TEST_CASE("diagonal matrix sorts descending with unit vectors") {
  Matrix d(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  d(2, 2) = 2.0;
  auto es = sym_eigen(d);
  CHECK(es.eigenvalues == std::vector<double>{3.0, 2.0, 1.0});
  CHECK(std::abs(es.eigenvectors(0, 0)) == 1.0);
  CHECK(std::abs(es.eigenvectors(2, 1)) == 1.0);
  CHECK(std::abs(es.eigenvectors(1, 2)) == 1.0);
}

TEST_CASE("equicorrelation spectrum is analytic") {
  const std::size_t n = 8;
  const double rho = 0.3;
  Matrix c(n, n, rho);
  for (std::size_t i = 0; i < n; ++i) c(i, i) = 1.0;
  auto es = sym_eigen(c);
  CHECK(es.eigenvalues[0] ==
        doctest::Approx(1.0 + (n - 1) * rho).epsilon(1e-9));
  for (std::size_t k = 1; k < n; ++k)
    CHECK(es.eigenvalues[k] == doctest::Approx(1.0 - rho).epsilon(1e-9));
  CHECK(explained_variance(es.eigenvalues[0], n) ==
        doctest::Approx((1.0 + 7.0 * rho) / 8.0).epsilon(1e-12));
}

TEST_CASE("random symmetric matrices: reconstruction, orthonormality, trace") {
  Rng rng(1234);
  for (int trial = 0; trial < 10; ++trial) {
    std::size_t n = 3 + rng.below(10);
    auto c = random_symmetric(n, rng);
    auto es = sym_eigen(c);

    CHECK(reconstruction_error(c, es) < 1e-8);

    double trace_c = 0.0, trace_l = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      trace_c += c(i, i);
      trace_l += es.eigenvalues[i];
    }
    CHECK(trace_l == doctest::Approx(trace_c).epsilon(1e-9));

    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          dot += es.eigenvectors(i, a) * es.eigenvectors(i, b);
        CHECK(dot == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-9));
      }

    for (std::size_t k = 1; k < n; ++k)
      CHECK(es.eigenvalues[k - 1] >= es.eigenvalues[k]);
  }
}

TEST_CASE("Rayleigh bound on factor-model correlation matrices") {
  FactorSpec spec;
  spec.n_assets = 10;
  spec.n_days = 2;
  spec.market_loading.assign(10, 0.5);
  spec.idio_sigma.assign(10, 0.8);
  FactorBlock all;
  for (int i = 0; i < 10; ++i) all.members.push_back(i);
  all.loading = 0.3;
  spec.blocks.push_back(all);

  auto c = population_correlation(spec);
  auto es = sym_eigen(c);
  double avg = 0.0;
  std::size_t cnt = 0;
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = i + 1; j < 10; ++j) {
      avg += c(i, j);
      ++cnt;
    }
  avg /= static_cast<double>(cnt);
  REQUIRE(avg > 0.0);
  CHECK(es.eigenvalues[0] >= 10.0 * avg);
}

TEST_CASE("sign orientation") {
  Matrix c(3, 3, 1.0);
  c(0, 1) = c(1, 0) = 0.5;
  c(0, 2) = c(2, 0) = 0.4;
  c(1, 2) = c(2, 1) = 0.6;
  auto es = sym_eigen(c);

  SUBCASE("reference component made positive") {
    orient(es, 1);
    for (std::size_t j = 0; j < 3; ++j) CHECK(es.eigenvectors(1, j) >= 0.0);
    // Orienting twice is a no-op.
    auto copy = es.eigenvectors;
    orient(es, 1);
    CHECK(es.eigenvectors == copy);
  }
  SUBCASE("zero reference falls back to largest component") {
    EigenSystem z;
    z.eigenvalues = {1.0};
    z.eigenvectors = Matrix(3, 1);
    z.eigenvectors(0, 0) = 0.0;
    z.eigenvectors(1, 0) = 0.6;
    z.eigenvectors(2, 0) = -0.8;
    orient(z, 0);
    CHECK(z.eigenvectors(2, 0) == 0.8);  // largest-magnitude entry now positive
    CHECK(z.eigenvectors(1, 0) == -0.6);
  }
  SUBCASE("out-of-range reference rejected") {
    CHECK_THROWS_AS(orient(es, 99), InputError);
  }
}

TEST_CASE("sym_eigen input validation") {
  Matrix bad(2, 3);
  CHECK_THROWS_AS(sym_eigen(bad), InputError);

  Matrix asym(2, 2, 0.0);
  asym(0, 1) = 0.5;
  asym(1, 0) = -0.5;
  CHECK_THROWS_AS(sym_eigen(asym), InputError);

  Matrix nan2(2, 2, 1.0);
  nan2(0, 1) = nan2(1, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(sym_eigen(nan2), InputError);
}

TEST_CASE("monthly eigen series") {
  Rng rng(12);
  std::vector<CorrelationMatrix> mats;
  for (int m = 0; m < 4; ++m) {
    CorrelationMatrix C;
    C.label = YearMonth{2008, 7 + m};
    C.n = 5;
    C.values = Matrix(5, 5, 1.0);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = i + 1; j < 5; ++j) {
        double v = 0.8 * rng.uniform01();
        C.values(i, j) = v;
        C.values(j, i) = v;
      }
    mats.push_back(std::move(C));
  }

  auto series = eigen_series(mats, 2, 3);
  CHECK(series.top_k == 3);
  REQUIRE(series.labels.size() == 4);
  CHECK(series.eigenvalues.rows() == 4);
  CHECK(series.eigenvalues.cols() == 3);
  CHECK(series.v1.cols() == 5);

  for (std::size_t m = 0; m < 4; ++m) {
    auto es = sym_eigen(mats[m].values);
    orient(es, 2);
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(series.eigenvalues(m, k) == es.eigenvalues[k]);
      CHECK(series.explained(m, k) == es.eigenvalues[k] / 5.0);
    }
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(series.v1(m, i) == es.eigenvectors(i, 0));
      CHECK(series.v2(m, i) == es.eigenvectors(i, 1));
    }
  }

  CHECK_THROWS_AS(eigen_series({}, 0, 3), InputError);
  CHECK_THROWS_AS(eigen_series(mats, 9, 3), InputError);
  CHECK_THROWS_AS(eigen_series(mats, 0, 0), InputError);
}
