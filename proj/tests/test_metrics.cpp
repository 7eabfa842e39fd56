#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "afd2d/metrics.hpp"
#include "oracles.hpp"

using namespace afd2d;

namespace {

Histogram make_hist(std::vector<double> bins) {
  Histogram h;
  h.bins = Eigen::Map<RVector>(bins.data(), static_cast<long>(bins.size()));
  return h;
}

// Plain-loop evaluation of the overlap distance.
double slow_bhattacharyya(const std::vector<double>& h1,
                          const std::vector<double>& h2) {
  double overlap = 0.0, mass1 = 0.0, mass2 = 0.0;
  for (size_t i = 0; i < h1.size(); ++i) {
    overlap += std::sqrt(h1[i] * h2[i]);
    mass1 += h1[i];
    mass2 += h2[i];
  }
  return std::sqrt(1.0 - overlap / std::sqrt(mass1 * mass2));
}

// Plain-loop structural similarity with centred moments.
double slow_mssim(const RMatrix& f, const RMatrix& g, double peak) {
  const int win = 11;
  const double sigma = 1.5, c = (win - 1) / 2.0;
  std::vector<std::vector<double>> w(win, std::vector<double>(win));
  double wsum = 0.0;
  for (int i = 0; i < win; ++i)
    for (int j = 0; j < win; ++j) {
      w[i][j] = std::exp(-((i - c) * (i - c) + (j - c) * (j - c)) /
                         (2.0 * sigma * sigma));
      wsum += w[i][j];
    }
  for (auto& row : w)
    for (double& v : row) v /= wsum;

  const double c1 = 0.01 * peak * 0.01 * peak;
  const double c2 = 0.03 * peak * 0.03 * peak;
  double total = 0.0;
  int count = 0;
  for (int p = 0; p + win <= f.rows(); ++p)
    for (int q = 0; q + win <= f.cols(); ++q) {
      double mf = 0.0, mg = 0.0;
      for (int i = 0; i < win; ++i)
        for (int j = 0; j < win; ++j) {
          mf += w[i][j] * f(p + i, q + j);
          mg += w[i][j] * g(p + i, q + j);
        }
      double vf = 0.0, vg = 0.0, cov = 0.0;
      for (int i = 0; i < win; ++i)
        for (int j = 0; j < win; ++j) {
          const double df = f(p + i, q + j) - mf;
          const double dg = g(p + i, q + j) - mg;
          vf += w[i][j] * df * df;
          vg += w[i][j] * dg * dg;
          cov += w[i][j] * df * dg;
        }
      total += (2.0 * mf * mg + c1) * (2.0 * cov + c2) /
               ((mf * mf + mg * mg + c1) * (vf + vg + c2));
      ++count;
    }
  return total / count;
}

RMatrix random_image(int rows, int cols, unsigned seed, double lo = 0.0,
                     double hi = 255.0) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> d(lo, hi);
  RMatrix img(rows, cols);
  for (int p = 0; p < rows; ++p)
    for (int q = 0; q < cols; ++q) img(p, q) = d(gen);
  return img;
}

}  // namespace

TEST_CASE("histogram distance is zero on identical inputs and one on disjoint ones") {
  const Histogram h = make_hist({3.0, 1.0, 0.0, 2.5});
  CHECK(bhattacharyya(h, h) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(bhattacharyya(make_hist({1.0, 0.0}), make_hist({0.0, 1.0})) ==
        doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("histogram distance on half-overlapping mass") {
  const double expect = slow_bhattacharyya({1.0, 1.0}, {1.0, 0.0});
  const double got = bhattacharyya(make_hist({1.0, 1.0}), make_hist({1.0, 0.0}));
  CHECK(got == doctest::Approx(expect).epsilon(1e-14));
  CHECK(got == doctest::Approx(std::sqrt(1.0 - 1.0 / std::sqrt(2.0))).epsilon(1e-14));
  CHECK(got == doctest::Approx(0.5412).epsilon(1e-4));
}

TEST_CASE("histogram distance is symmetric and scale invariant") {
  std::mt19937 gen(57);
  std::uniform_real_distribution<double> d(0.0, 10.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> b1(32), b2(32);
    for (double& v : b1) v = d(gen);
    for (double& v : b2) v = d(gen);
    const Histogram h1 = make_hist(b1), h2 = make_hist(b2);
    const double base = bhattacharyya(h1, h2);
    CHECK(base == doctest::Approx(bhattacharyya(h2, h1)).epsilon(1e-14));
    CHECK(base == doctest::Approx(slow_bhattacharyya(b1, b2)).epsilon(1e-12));
    Histogram s1 = h1, s2 = h2;
    s1.bins *= 3.7;
    s2.bins *= 0.21;
    CHECK(bhattacharyya(s1, s2) == doctest::Approx(base).epsilon(1e-12));
    CHECK(base >= 0.0);
    CHECK(base <= 1.0);
  }
}

TEST_CASE("histogram distance rejects malformed inputs") {
  CHECK_THROWS_AS(bhattacharyya(make_hist({1.0, 2.0}), make_hist({1.0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(bhattacharyya(make_hist({0.0, 0.0}), make_hist({1.0, 1.0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(bhattacharyya(make_hist({1.0, -0.5}), make_hist({1.0, 1.0})),
                  std::invalid_argument);
}

TEST_CASE("image histogram clamps out-of-range samples into the edge bins") {
  RMatrix img(2, 3);
  img << -40.0, 0.0, 10.4, 255.0, 300.0, 128.0;
  const Histogram h = image_histogram(img, 256);
  REQUIRE(h.bins.size() == 256);
  CHECK(h.bins.sum() == doctest::Approx(6.0));
  CHECK(h.bins(0) == doctest::Approx(2.0));    // -40 clamps up to 0
  CHECK(h.bins(255) == doctest::Approx(2.0));  // 300 clamps down
  CHECK(h.bins(10) == doctest::Approx(1.0));
  CHECK(h.bins(128) == doctest::Approx(1.0));

  RMatrix ramp(16, 16);
  for (int p = 0; p < 16; ++p)
    for (int q = 0; q < 16; ++q) ramp(p, q) = p * 16 + q;
  const Histogram flat = image_histogram(ramp, 256);
  for (int i = 0; i < 256; ++i) CHECK(flat.bins(i) == doctest::Approx(1.0));

  CHECK_THROWS_AS(image_histogram(img, 0), std::invalid_argument);
  CHECK_THROWS_AS(image_histogram(img, 8, 5.0, 5.0), std::invalid_argument);
}

TEST_CASE("psnr hits the documented reference points") {
  const RMatrix f = random_image(12, 17, 9001);
  CHECK(std::isinf(psnr(f, f)));

  const RMatrix zeros = RMatrix::Zero(8, 8);
  const RMatrix full = RMatrix::Constant(8, 8, 255.0);
  CHECK(psnr(zeros, full) == doctest::Approx(0.0).epsilon(1e-12));

  const RMatrix g = RMatrix::Constant(8, 8, 255.0 / std::sqrt(1000.0));
  CHECK(psnr(zeros, g) == doctest::Approx(30.0).epsilon(1e-12));

  const RMatrix h = random_image(12, 17, 9002);
  CHECK(psnr(f, h) == doctest::Approx(psnr(h, f)).epsilon(1e-14));
  CHECK_THROWS_AS(psnr(f, RMatrix::Zero(12, 16)), std::invalid_argument);
  CHECK_THROWS_AS(psnr(f, f, 0.0), std::invalid_argument);
}

TEST_CASE("structural similarity is one on a perfect match") {
  const RMatrix f = random_image(16, 16, 24);
  CHECK(mssim(f, f) == doctest::Approx(1.0).epsilon(1e-12));
  const RMatrix c = RMatrix::Constant(16, 16, 42.0);
  CHECK(mssim(c, c) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("structural similarity of shifted constants reduces to the luminance term") {
  const double mu_f = 100.0, mu_g = 110.0, c1 = 0.01 * 255.0 * 0.01 * 255.0;
  const double expect = (2.0 * mu_f * mu_g + c1) / (mu_f * mu_f + mu_g * mu_g + c1);
  const RMatrix f = RMatrix::Constant(16, 20, mu_f);
  const RMatrix g = RMatrix::Constant(16, 20, mu_g);
  CHECK(mssim(f, g) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(mssim(f, g) == doctest::Approx(slow_mssim(f, g, 255.0)).epsilon(1e-12));
}

TEST_CASE("structural similarity matches the windowed oracle on textured images") {
  const RMatrix f = random_image(14, 19, 551, 40.0, 200.0);
  RMatrix g = f;
  std::mt19937 gen(552);
  std::uniform_real_distribution<double> noise(-20.0, 20.0);
  for (int p = 0; p < g.rows(); ++p)
    for (int q = 0; q < g.cols(); ++q) g(p, q) += noise(gen);
  CHECK(mssim(f, g) == doctest::Approx(slow_mssim(f, g, 255.0)).epsilon(1e-10));
  CHECK(mssim(f, g) == doctest::Approx(mssim(g, f)).epsilon(1e-14));
}

TEST_CASE("structural similarity degrades monotonically with noise amplitude") {
  const RMatrix f = random_image(24, 24, 77, 60.0, 180.0);
  std::mt19937 gen(78);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  RMatrix small = f, large = f;
  for (int p = 0; p < f.rows(); ++p)
    for (int q = 0; q < f.cols(); ++q) {
      const double u = unit(gen);
      small(p, q) += 5.0 * u;
      large(p, q) += 50.0 * u;
    }
  CHECK(mssim(f, large) < mssim(f, small));
  CHECK(mssim(f, small) < 1.0);
}

TEST_CASE("structural similarity validates shapes") {
  const RMatrix f = random_image(16, 16, 3);
  CHECK_THROWS_AS(mssim(f, random_image(16, 15, 4)), std::invalid_argument);
  CHECK_THROWS_AS(mssim(random_image(10, 30, 5), random_image(10, 30, 6)),
                  std::invalid_argument);
}

TEST_CASE("metric outputs stay in their declared ranges on fuzzed images") {
  for (unsigned seed = 0; seed < 20; ++seed) {
    const RMatrix f = random_image(13, 16, 100 + seed, -30.0, 290.0);
    const RMatrix g = random_image(13, 16, 200 + seed, -30.0, 290.0);
    const MetricsReport r = compare_images(f, g);
    CHECK(r.bhattacharyya >= 0.0);
    CHECK(r.bhattacharyya <= 1.0);
    CHECK(std::isfinite(r.psnr_db));
    CHECK(r.mssim >= -1.0);
    CHECK(r.mssim <= 1.0);
  }
}

TEST_CASE("combined report agrees with the individual indicators") {
  const RMatrix f = random_image(16, 16, 31, 0.0, 255.0);
  const RMatrix g = random_image(16, 16, 32, 0.0, 255.0);
  const MetricsReport r = compare_images(f, g);
  CHECK(r.bhattacharyya ==
        doctest::Approx(bhattacharyya(image_histogram(f), image_histogram(g)))
            .epsilon(1e-15));
  CHECK(r.psnr_db == doctest::Approx(psnr(f, g)).epsilon(1e-15));
  CHECK(r.mssim == doctest::Approx(mssim(f, g)).epsilon(1e-15));

  const MetricsReport same = compare_images(f, f);
  CHECK(same.bhattacharyya == doctest::Approx(0.0));
  CHECK(std::isinf(same.psnr_db));
  CHECK(same.mssim == doctest::Approx(1.0));
}
