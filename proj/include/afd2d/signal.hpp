#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace afd2d {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Uniform m-by-n sampling of the 2-torus.
///
/// First-axis nodes are t_p = 2*pi*(p + offset)/m for p = 0..m-1, second-axis
/// nodes s_q = 2*pi*(q + offset)/n.  A fractional offset keeps the nodes off
/// special points of a signal (the toy signal below has a singular boundary
/// point that the default offset of one half avoids).
struct TorusGrid {
  int m = 0;
  int n = 0;
  double offset = 0.5;

  TorusGrid() = default;
  TorusGrid(int m_rows, int n_cols, double node_offset = 0.5);

  bool operator==(const TorusGrid& other) const = default;

  std::vector<double> t_nodes() const;
  std::vector<double> s_nodes() const;
  /// Unit-circle points e^{i t_p}.
  CVector t_points() const;
  /// Unit-circle points e^{i s_q}.
  CVector s_points() const;
};

/// Complex samples on a TorusGrid; values(p, q) is the sample at (t_p, s_q).
class Signal2D {
 public:
  Signal2D() = default;
  Signal2D(TorusGrid grid, CMatrix values);

  static Signal2D zero(const TorusGrid& grid);
  static Signal2D constant(const TorusGrid& grid, Complex value);

  const TorusGrid& grid() const { return grid_; }
  const CMatrix& values() const { return values_; }
  CMatrix& values() { return values_; }
  int rows() const { return static_cast<int>(values_.rows()); }
  int cols() const { return static_cast<int>(values_.cols()); }

 private:
  TorusGrid grid_;
  CMatrix values_;
};

/// Discrete inner product (1/(mn)) * sum_pq f(p,q) * conj(g(p,q)).
Complex inner_product(const Signal2D& f, const Signal2D& g);

/// Quadrature norm sqrt(<f, f>).
double norm(const Signal2D& f);

/// Squared quadrature norm <f, f>.
double energy(const Signal2D& f);

Signal2D add(const Signal2D& f, const Signal2D& g);
Signal2D subtract(const Signal2D& f, const Signal2D& g);
Signal2D scale(const Signal2D& f, Complex factor);

/// One-axis analogue of inner_product: (1/len) * sum_p u_p * conj(v_p).
Complex inner_product_1d(const CVector& u, const CVector& v);
double norm_1d(const CVector& u);

/// Samples the product test signal
///   f1(z) = 4 z^2 (1 + 0.02 z) / (1 + 0.7 z) * exp((z + i)/(z - i)),
///   f2(w) = 4 w^2 (1 + 0.02 w) / (1 + 0.7 w),
///   f(z, w) = f1(z) f2(w)
/// at z = e^{i t_p}, w = e^{i s_q}.  f1 has an essential singularity at z = i;
/// grids with a node there (offset 0 and m divisible by 4) are rejected.
Signal2D sample_toy_signal(const TorusGrid& grid);

}  // namespace afd2d
