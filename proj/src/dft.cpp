#include "afd2d/dft.hpp"

#include <numbers>

namespace afd2d {

CMatrix character_matrix(int m, double offset) {
  CMatrix e(m, m);
  for (int p = 0; p < m; ++p) {
    const double t = 2.0 * std::numbers::pi * (p + offset) / m;
    for (int j = 0; j < m; ++j) e(p, j) = std::polar(1.0, j * t);
  }
  return e;
}

CMatrix dft2d_bins(const Signal2D& f) {
  const CMatrix et = character_matrix(f.grid().m, f.grid().offset);
  const CMatrix es = character_matrix(f.grid().n, f.grid().offset);
  CMatrix bins = et.adjoint() * f.values() * es.conjugate();
  bins /= static_cast<double>(static_cast<long long>(f.rows()) * f.cols());
  return bins;
}

Signal2D idft2d_bins(const CMatrix& bins, const TorusGrid& grid) {
  const CMatrix et = character_matrix(grid.m, grid.offset);
  const CMatrix es = character_matrix(grid.n, grid.offset);
  return Signal2D(grid, et * bins * es.transpose());
}

CVector dft1d_bins(const CVector& v, double offset) {
  const int m = static_cast<int>(v.size());
  const CMatrix e = character_matrix(m, offset);
  return e.adjoint() * v / static_cast<double>(m);
}

CVector idft1d_bins(const CVector& bins, double offset) {
  const int m = static_cast<int>(bins.size());
  const CMatrix e = character_matrix(m, offset);
  return e * bins;
}

}  // namespace afd2d
