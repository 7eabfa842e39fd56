#include "afd2d/real_pipeline.hpp"

#include <cmath>
#include <stdexcept>

#include "afd2d/dft.hpp"
#include "afd2d/errors.hpp"

namespace afd2d {

namespace {

// 1D projection of a real axis-mean vector onto nonnegative (keep_plus) or
// nonpositive modes, excluding the ambiguous half-way bin.
CVector axis_mode_projection(const RVector& values, double offset, bool keep_plus) {
  const int m = static_cast<int>(values.size());
  CVector bins = dft1d_bins(values.cast<Complex>(), offset);
  for (Eigen::Index j = 0; j < m; ++j) {
    const bool keep = keep_plus ? bin_is_plus(j, m) : bin_is_minus(j, m);
    if (!keep) bins(j) = 0.0;
  }
  return idft1d_bins(bins, offset);
}

CMatrix broadcast_rows(const CVector& per_row, int cols) {
  return per_row * Eigen::RowVectorXcd::Ones(cols);
}

CMatrix broadcast_cols(const CVector& per_col, int rows) {
  return CVector::Ones(rows) * per_col.transpose();
}

}  // namespace

Signal2D flip_columns(const Signal2D& f) {
  const int n = f.cols();
  CMatrix out(f.rows(), n);
  for (int q = 0; q < n; ++q) out.col(q) = f.values().col((n - q) % n);
  return Signal2D(f.grid(), std::move(out));
}

RealSplit split_real(const Signal2D& f) {
  const double scale = std::sqrt(energy(f));
  const double imag_peak = f.values().imag().cwiseAbs().maxCoeff();
  if (imag_peak > 1e-12 * std::max(scale, 1e-300) && scale > 0.0)
    throw std::invalid_argument("split_real: input has a non-negligible imaginary part");

  RealSplit split;
  const RMatrix re = f.values().real();
  split.f0 = re.rowwise().mean();
  split.g0 = re.colwise().mean().transpose();
  split.c00 = re.mean();

  CMatrix lifted = re.cast<Complex>();
  lifted.colwise() += split.f0.cast<Complex>().eval();
  lifted.rowwise() += split.g0.cast<Complex>().transpose().eval();
  lifted.array() += split.c00;
  split.lift = Signal2D(f.grid(), std::move(lifted));
  split.flip = flip_columns(split.lift);
  return split;
}

Signal2D plus_projection(const Signal2D& f) {
  CMatrix bins = dft2d_bins(f);
  for (Eigen::Index j = 0; j < bins.rows(); ++j)
    for (Eigen::Index l = 0; l < bins.cols(); ++l)
      if (!bin_is_plus(j, f.rows()) || !bin_is_plus(l, f.cols())) bins(j, l) = 0.0;
  return idft2d_bins(bins, f.grid());
}

RealDecomposition decompose_real(const Signal2D& f, EngineKind engine,
                                 const EngineConfig& config) {
  RealDecomposition parts;
  parts.engine = engine;
  parts.split = split_real(f);
  parts.lift_result = run_engine(parts.split.lift, engine, config);
  parts.flip_result = run_engine(parts.split.flip, engine, config);
  return parts;
}

Signal2D reconstruct_real(const RealDecomposition& parts, int level) {
  if (level < 0) throw std::invalid_argument("reconstruct_real: negative level");
  const RealSplit& split = parts.split;
  const TorusGrid& grid = split.lift.grid();
  const double offset = grid.offset;

  const CVector f0_plus = axis_mode_projection(split.f0, offset, true);
  const CVector g0_plus = axis_mode_projection(split.g0, offset, true);
  const CVector g0_minus = axis_mode_projection(split.g0, offset, false);

  CMatrix lift_part =
      reconstruct_engine(parts.lift_result, grid, level).values();
  lift_part -= broadcast_rows(f0_plus, grid.n);
  lift_part -= broadcast_cols(g0_plus, grid.m);
  lift_part.array() -= split.c00;

  CMatrix flip_part =
      flip_columns(reconstruct_engine(parts.flip_result, grid, level)).values();
  flip_part -= broadcast_rows(f0_plus, grid.n);
  flip_part -= broadcast_cols(g0_minus, grid.m);
  flip_part.array() -= split.c00;

  CMatrix out = lift_part + lift_part.conjugate() + flip_part + flip_part.conjugate();
  out.colwise() -= split.f0.cast<Complex>().eval();
  out.rowwise() -= split.g0.cast<Complex>().transpose().eval();
  out.array() -= split.c00;

  const double imag_peak = out.imag().cwiseAbs().maxCoeff();
  const double scale = std::sqrt(energy(Signal2D(grid, out)));
  if (imag_peak > 1e-10 * std::max(scale, 1e-300))
    throw NumericalError("reconstruct_real: reconstruction failed to be real");
  return Signal2D(grid, out.real().cast<Complex>());
}

}  // namespace afd2d
