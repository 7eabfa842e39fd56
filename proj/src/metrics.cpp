#include "afd2d/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace afd2d {

Histogram image_histogram(const RMatrix& image, int bins, double lo, double hi) {
  if (bins < 1) throw std::invalid_argument("image_histogram: bins must be >= 1");
  if (!(hi > lo)) throw std::invalid_argument("image_histogram: empty range");
  Histogram h;
  h.lo = lo;
  h.hi = hi;
  h.bins = RVector::Zero(bins);
  const double width = (hi - lo) / bins;
  for (Eigen::Index p = 0; p < image.rows(); ++p)
    for (Eigen::Index q = 0; q < image.cols(); ++q) {
      const double v = std::clamp(image(p, q), lo, hi);
      const int idx = std::min(bins - 1, static_cast<int>((v - lo) / width));
      h.bins(std::max(0, idx)) += 1.0;
    }
  return h;
}

double bhattacharyya(const Histogram& h1, const Histogram& h2) {
  if (h1.bins.size() != h2.bins.size())
    throw std::invalid_argument("bhattacharyya: bin counts differ");
  const double s1 = h1.bins.sum();
  const double s2 = h2.bins.sum();
  if (!(s1 > 0.0) || !(s2 > 0.0))
    throw std::invalid_argument("bhattacharyya: histogram has zero mass");
  double overlap = 0.0;
  for (Eigen::Index i = 0; i < h1.bins.size(); ++i) {
    if (h1.bins(i) < 0.0 || h2.bins(i) < 0.0)
      throw std::invalid_argument("bhattacharyya: negative bin");
    overlap += std::sqrt(h1.bins(i) * h2.bins(i));
  }
  const double coefficient = std::clamp(overlap / std::sqrt(s1 * s2), 0.0, 1.0);
  return std::sqrt(1.0 - coefficient);
}

double psnr(const RMatrix& f, const RMatrix& g, double peak) {
  if (f.rows() != g.rows() || f.cols() != g.cols())
    throw std::invalid_argument("psnr: image shapes differ");
  if (!(peak > 0.0)) throw std::invalid_argument("psnr: peak must be positive");
  const double mse =
      (f - g).squaredNorm() / static_cast<double>(f.rows() * f.cols());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

namespace {

RMatrix gaussian_window(int size, double sigma) {
  RMatrix w(size, size);
  const double c = (size - 1) / 2.0;
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j)
      w(i, j) = std::exp(-((i - c) * (i - c) + (j - c) * (j - c)) /
                         (2.0 * sigma * sigma));
  w /= w.sum();
  return w;
}

}  // namespace

double mssim(const RMatrix& f, const RMatrix& g, double peak) {
  if (f.rows() != g.rows() || f.cols() != g.cols())
    throw std::invalid_argument("mssim: image shapes differ");
  constexpr int kWin = 11;
  if (f.rows() < kWin || f.cols() < kWin)
    throw std::invalid_argument("mssim: image smaller than the 11x11 window");
  static const RMatrix w = gaussian_window(kWin, 1.5);
  const double c1 = (0.01 * peak) * (0.01 * peak);
  const double c2 = (0.03 * peak) * (0.03 * peak);

  double total = 0.0;
  long count = 0;
  for (Eigen::Index p = 0; p + kWin <= f.rows(); ++p) {
    for (Eigen::Index q = 0; q + kWin <= f.cols(); ++q) {
      const auto fw = f.block(p, q, kWin, kWin);
      const auto gw = g.block(p, q, kWin, kWin);
      const double mu_f = fw.cwiseProduct(w).sum();
      const double mu_g = gw.cwiseProduct(w).sum();
      const double var_f = fw.cwiseProduct(fw).cwiseProduct(w).sum() - mu_f * mu_f;
      const double var_g = gw.cwiseProduct(gw).cwiseProduct(w).sum() - mu_g * mu_g;
      const double cov = fw.cwiseProduct(gw).cwiseProduct(w).sum() - mu_f * mu_g;
      total += ((2.0 * mu_f * mu_g + c1) * (2.0 * cov + c2)) /
               ((mu_f * mu_f + mu_g * mu_g + c1) * (var_f + var_g + c2));
      ++count;
    }
  }
  return total / static_cast<double>(count);
}

MetricsReport compare_images(const RMatrix& reference, const RMatrix& test,
                             int bins, double peak) {
  MetricsReport report;
  report.bhattacharyya = bhattacharyya(image_histogram(reference, bins),
                                       image_histogram(test, bins));
  report.psnr_db = psnr(reference, test, peak);
  report.mssim = mssim(reference, test, peak);
  return report;
}

}  // namespace afd2d
