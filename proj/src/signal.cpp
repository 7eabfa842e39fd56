#include "afd2d/signal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "afd2d/errors.hpp"

namespace afd2d {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TorusGrid::TorusGrid(int m_rows, int n_cols, double node_offset)
    : m(m_rows), n(n_cols), offset(node_offset) {
  if (m < 2 || n < 2) throw std::invalid_argument("TorusGrid: sizes must be >= 2");
  if (!(offset >= 0.0) || !(offset < 1.0))
    throw std::invalid_argument("TorusGrid: offset must lie in [0, 1)");
}

std::vector<double> TorusGrid::t_nodes() const {
  std::vector<double> nodes(m);
  for (int p = 0; p < m; ++p) nodes[p] = kTwoPi * (p + offset) / m;
  return nodes;
}

std::vector<double> TorusGrid::s_nodes() const {
  std::vector<double> nodes(n);
  for (int q = 0; q < n; ++q) nodes[q] = kTwoPi * (q + offset) / n;
  return nodes;
}

CVector TorusGrid::t_points() const {
  CVector z(m);
  for (int p = 0; p < m; ++p) z(p) = std::polar(1.0, kTwoPi * (p + offset) / m);
  return z;
}

CVector TorusGrid::s_points() const {
  CVector w(n);
  for (int q = 0; q < n; ++q) w(q) = std::polar(1.0, kTwoPi * (q + offset) / n);
  return w;
}

Signal2D::Signal2D(TorusGrid grid, CMatrix values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.rows() != grid_.m || values_.cols() != grid_.n)
    throw std::invalid_argument("Signal2D: value shape does not match grid");
  if (!values_.allFinite())
    throw std::invalid_argument("Signal2D: values must be finite");
}

Signal2D Signal2D::zero(const TorusGrid& grid) {
  return Signal2D(grid, CMatrix::Zero(grid.m, grid.n));
}

Signal2D Signal2D::constant(const TorusGrid& grid, Complex value) {
  return Signal2D(grid, CMatrix::Constant(grid.m, grid.n, value));
}

Complex inner_product(const Signal2D& f, const Signal2D& g) {
  if (!(f.grid() == g.grid()))
    throw std::invalid_argument("inner_product: signals live on different grids");
  const Complex s = f.values().cwiseProduct(g.values().conjugate()).sum();
  return s / static_cast<double>(static_cast<long long>(f.rows()) * f.cols());
}

double energy(const Signal2D& f) {
  const double s = f.values().squaredNorm();
  return s / static_cast<double>(static_cast<long long>(f.rows()) * f.cols());
}

double norm(const Signal2D& f) { return std::sqrt(energy(f)); }

Signal2D add(const Signal2D& f, const Signal2D& g) {
  if (!(f.grid() == g.grid()))
    throw std::invalid_argument("add: signals live on different grids");
  return Signal2D(f.grid(), f.values() + g.values());
}

Signal2D subtract(const Signal2D& f, const Signal2D& g) {
  if (!(f.grid() == g.grid()))
    throw std::invalid_argument("subtract: signals live on different grids");
  return Signal2D(f.grid(), f.values() - g.values());
}

Signal2D scale(const Signal2D& f, Complex factor) {
  return Signal2D(f.grid(), f.values() * factor);
}

Complex inner_product_1d(const CVector& u, const CVector& v) {
  if (u.size() != v.size())
    throw std::invalid_argument("inner_product_1d: length mismatch");
  return u.cwiseProduct(v.conjugate()).sum() / static_cast<double>(u.size());
}

double norm_1d(const CVector& u) {
  return std::sqrt(u.squaredNorm() / static_cast<double>(u.size()));
}

namespace {

Complex rational_factor(Complex z) {
  return 4.0 * z * z * (1.0 + 0.02 * z) / (1.0 + 0.7 * z);
}

Complex toy_axis1(Complex z) {
  const Complex i(0.0, 1.0);
  return rational_factor(z) * std::exp((z + i) / (z - i));
}

Complex toy_axis2(Complex w) { return rational_factor(w); }

}  // namespace

Signal2D sample_toy_signal(const TorusGrid& grid) {
  const Complex i(0.0, 1.0);
  const CVector z = grid.t_points();
  const CVector w = grid.s_points();
  CVector f1(grid.m), f2(grid.n);
  for (int p = 0; p < grid.m; ++p) {
    if (std::abs(z(p) - i) < 1e-12)
      throw std::invalid_argument(
          "sample_toy_signal: node hits the singular point z = i; "
          "use a fractional grid offset");
    f1(p) = toy_axis1(z(p));
  }
  for (int q = 0; q < grid.n; ++q) f2(q) = toy_axis2(w(q));
  return Signal2D(grid, f1 * f2.transpose());
}

}  // namespace afd2d
