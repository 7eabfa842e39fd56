#pragma once

#include "afd2d/signal.hpp"

namespace afd2d {

/// Pixel-value histogram over [lo, hi) with equally wide bins.
struct Histogram {
  RVector bins;
  double lo = 0.0;
  double hi = 256.0;
};

/// Bins an image; values are clamped into the range first.
Histogram image_histogram(const RMatrix& image, int bins = 256, double lo = 0.0,
                          double hi = 256.0);

/// d = sqrt(1 - sum_i sqrt(h1_i h2_i) / sqrt(sum h1 * sum h2)), in [0, 1].
double bhattacharyya(const Histogram& h1, const Histogram& h2);

/// 10 log10(L^2 / MSE) in dB; +infinity when the images are identical.
double psnr(const RMatrix& f, const RMatrix& g, double peak = 255.0);

/// Mean structural similarity over 11x11 Gaussian-weighted windows
/// (sigma 1.5, weights summing to 1, windows fully inside the image),
/// with stabilizers C1 = (0.01 L)^2, C2 = (0.03 L)^2.
double mssim(const RMatrix& f, const RMatrix& g, double peak = 255.0);

struct MetricsReport {
  double bhattacharyya = 0.0;
  double psnr_db = 0.0;
  double mssim = 0.0;
};

/// All three indicators for a reconstruction against its reference.
/// Histogramming clamps to [0, 256); PSNR/MSSIM see the raw values.
MetricsReport compare_images(const RMatrix& reference, const RMatrix& test,
                             int bins = 256, double peak = 255.0);

}  // namespace afd2d
